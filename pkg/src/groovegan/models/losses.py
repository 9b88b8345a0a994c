"""Adversarial and ambiguity loss terms.

All probabilities are clamped to [EPS, 1-EPS] before any log, so the loss
values asserted in tests are exact and gradients stay finite.
"""

from __future__ import annotations

import torch

EPS = 1e-7


def _as_tensor(x) -> torch.Tensor:
    if isinstance(x, torch.Tensor):
        return x
    return torch.as_tensor(x, dtype=torch.float64)


def _clamp(p: torch.Tensor) -> torch.Tensor:
    return p.clamp(EPS, 1.0 - EPS)


def gan_losses(d_real, d_fake) -> tuple[torch.Tensor, torch.Tensor]:
    """Discriminator and (non-saturating) generator losses.

    loss_d = -[log d_real + log(1 - d_fake)], loss_g = -log d_fake; both are
    means over whatever batch shape the inputs carry.
    """
    pr = _clamp(_as_tensor(d_real))
    pf = _clamp(_as_tensor(d_fake))
    loss_d = -(torch.log(pr).mean() + torch.log(1.0 - pf).mean())
    loss_g = -torch.log(pf).mean()
    return loss_d, loss_g


def genre_ambiguity_loss(posterior) -> torch.Tensor:
    """Cross-entropy between a genre posterior and the uniform distribution.

    -sum_k [(1/K) log p_k + (1 - 1/K) log(1 - p_k)], averaged over the batch;
    minimized exactly when every p_k = 1/K.
    """
    p = _clamp(_as_tensor(posterior))
    k = p.shape[-1]
    per_sample = -((1.0 / k) * torch.log(p) + (1.0 - 1.0 / k) * torch.log(1.0 - p)).sum(dim=-1)
    return per_sample.mean()


def genre_classification_loss(posterior, labels) -> torch.Tensor:
    """Negative log-likelihood of the true genre under the posterior."""
    p = _clamp(_as_tensor(posterior))
    if p.dim() == 1:
        p = p.unsqueeze(0)
    idx = torch.as_tensor(labels, dtype=torch.long).reshape(-1)
    picked = p[torch.arange(p.shape[0]), idx]
    return -torch.log(picked).mean()


def posterior_entropy(posterior) -> torch.Tensor:
    """Per-sample Shannon entropy (natural log) of genre posteriors."""
    p = _clamp(_as_tensor(posterior))
    return -(p * torch.log(p)).sum(dim=-1)
