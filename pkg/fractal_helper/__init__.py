from .Helper import Helper, RunConfig
from .Fock import Fock, FockOperator, FockState, QDeformation
from .SelfSim import SelfSim, Polyline, SimilaritySpec
from .Spiral import Spiral, SpiralParams, MechanicalParams, Trajectory, Handedness
from .Dissipative import Dissipative, TwoModeState, SU11Generators
from .Golden import Golden, GoldenConstants
from .NCPlane import NCPlane, NCParams
from .Verify import Verify, VerificationReport

__all__ = [
    "Helper",
    "RunConfig",
    "Fock",
    "FockOperator",
    "FockState",
    "QDeformation",
    "SelfSim",
    "Polyline",
    "SimilaritySpec",
    "Spiral",
    "SpiralParams",
    "MechanicalParams",
    "Trajectory",
    "Handedness",
    "Dissipative",
    "TwoModeState",
    "SU11Generators",
    "Golden",
    "GoldenConstants",
    "NCPlane",
    "NCParams",
    "Verify",
    "VerificationReport",
]
