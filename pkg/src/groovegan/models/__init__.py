from .nets import (
    LATENT_DIM,
    ConditionedDiscriminator,
    CreativeDiscriminator,
    GenreClassifier,
    RhythmGenerator,
    classifier_forward,
    discriminator_forward,
    generate_batch,
    generator_forward,
)
from .losses import (
    EPS,
    gan_losses,
    genre_ambiguity_loss,
    genre_classification_loss,
    posterior_entropy,
)
from .sampling import sample_z
from .checkpoint import (
    CHECKPOINT_VERSION,
    Checkpoint,
    build_models,
    load_checkpoint,
    save_checkpoint,
)
from .train import (
    ClassifierTrainConfig,
    GanTrainConfig,
    classifier_accuracy,
    select_creative_checkpoint,
    set_strict_determinism,
    stratified_split,
    train_classifier,
    train_conditioned_gan,
    train_creative_gan,
)

__all__ = [
    "CHECKPOINT_VERSION",
    "Checkpoint",
    "ClassifierTrainConfig",
    "ConditionedDiscriminator",
    "CreativeDiscriminator",
    "EPS",
    "GanTrainConfig",
    "GenreClassifier",
    "LATENT_DIM",
    "RhythmGenerator",
    "build_models",
    "classifier_accuracy",
    "classifier_forward",
    "discriminator_forward",
    "gan_losses",
    "generate_batch",
    "generator_forward",
    "genre_ambiguity_loss",
    "genre_classification_loss",
    "load_checkpoint",
    "posterior_entropy",
    "sample_z",
    "save_checkpoint",
    "select_creative_checkpoint",
    "set_strict_determinism",
    "stratified_split",
    "train_classifier",
    "train_conditioned_gan",
    "train_creative_gan",
]
