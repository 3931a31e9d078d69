from .assembly import (
    AssembledProblem,
    ObjectiveVector,
    assemble,
    decode,
    evaluate,
    evaluate_workflow,
    infeasible_vector,
)
from .encoding import (
    EncodingKind,
    Genotype,
    MultiEncodingSpec,
    SubEncodingSpec,
    check_genotype,
    genotype_from_jsonable,
    genotype_to_jsonable,
    validate_genotype,
)
from .plugins import (
    ComplexFitnessCalculator,
    MetaInformationAppender,
    ObjectiveSpec,
    PluginRegistry,
    PrimitiveFitnessCalculator,
    WorkflowManipulator,
)

__all__ = [
    "AssembledProblem",
    "ComplexFitnessCalculator",
    "EncodingKind",
    "Genotype",
    "MetaInformationAppender",
    "MultiEncodingSpec",
    "ObjectiveSpec",
    "ObjectiveVector",
    "PluginRegistry",
    "PrimitiveFitnessCalculator",
    "SubEncodingSpec",
    "WorkflowManipulator",
    "assemble",
    "check_genotype",
    "decode",
    "evaluate",
    "evaluate_workflow",
    "genotype_from_jsonable",
    "genotype_to_jsonable",
    "infeasible_vector",
    "validate_genotype",
]
