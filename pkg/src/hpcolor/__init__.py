"""hpcolor: 2-color half-plane families so depth-3 points see both colors."""

from .model import BLUE, RED, HalfPlane, Instance
from .engine import solve
from .verification import verify, oracle, depth, hyperedges

__all__ = [
    "BLUE",
    "RED",
    "HalfPlane",
    "Instance",
    "solve",
    "verify",
    "oracle",
    "depth",
    "hyperedges",
]

__version__ = "0.1.0"
