from .builders import (
    AMBIGUOUS,
    build_thm4_tree,
    build_thm5_tree,
    build_thm6_tree,
    build_tree,
    theorem_for,
)
from .joint import JointState, Projector, Resource
from .refine import refine_leaf
from .simulate import DiscriminationReport, run
from .tree import (
    COMPLEMENT,
    UNREACHABLE,
    Leaf,
    MeasurementNode,
    Outcome,
    ProtocolTree,
    TreeInvalidError,
    validate_tree,
)
