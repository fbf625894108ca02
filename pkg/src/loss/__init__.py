"""Quadratic score matching loss: assembly, amplification and profiling."""

from .amplify import amplify, multiplier_upper_bound
from .assembly import (
    assemble,
    assemble_gaussian_full_support,
    assemble_pairwise,
    assemble_truncated_gaussian,
)
from .base import AmplifierMode, AmplifierScope, AmplifierSpec, Layout, QuadraticLoss
from .direct import direct_sample_loss
from .profile import EtaRecovery, profile_out_eta
from .snapshot import read_snapshot, write_snapshot
from .transform import back_transform_estimate

__all__ = [
    "AmplifierMode",
    "AmplifierScope",
    "AmplifierSpec",
    "EtaRecovery",
    "Layout",
    "QuadraticLoss",
    "amplify",
    "assemble",
    "assemble_gaussian_full_support",
    "assemble_pairwise",
    "assemble_truncated_gaussian",
    "back_transform_estimate",
    "direct_sample_loss",
    "multiplier_upper_bound",
    "profile_out_eta",
    "read_snapshot",
    "write_snapshot",
]
