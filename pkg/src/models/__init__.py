"""Domain models for the crossworld mediation toolkit."""

from .audit import AuditReport, DiagnosticStatistic, IdentificationStrategy, ScenarioFlags
from .config import PARAMETER_NAMES, Coupling, ModelConfig, OutcomeKind, validate_config
from .counterfactuals import (
    COUNTERFACTUAL_COLUMNS,
    CounterfactualBatch,
    CounterfactualUnit,
    ObservedDataset,
    ObservedRow,
    infer_outcome_kind,
)
from .errors import (
    DegenerateStratum,
    EmptyCell,
    EmptyFile,
    FormatError,
    GridTooLarge,
    InvalidConfig,
    InvalidInput,
    IoError,
    MediationError,
    NonFinite,
    NotBinaryOutcome,
    ParseError,
    PositivityViolation,
    RankDeficient,
    SchemaError,
    SettingFailed,
)
from .estimates import (
    BoundsInput,
    CellStats,
    EffectEstimates,
    EstimationMethod,
    InterventionalEffects,
    LsemCoefficients,
    NdeBounds,
    OracleReport,
    SeparableEffects,
)
from .grid import (
    RESULT_COLUMNS,
    SWEEP_COLUMNS,
    BiasStratum,
    BiasSummary,
    GridMethod,
    GridResultRow,
    GridSpec,
    InteractionCell,
    ParameterLists,
    SweepRow,
    WorstCaseRow,
    default_values,
)
from .run import IoPaths, OutputFormat, RunConfig

__all__ = [
    "PARAMETER_NAMES",
    "COUNTERFACTUAL_COLUMNS",
    "RESULT_COLUMNS",
    "SWEEP_COLUMNS",
    "OutcomeKind",
    "Coupling",
    "ModelConfig",
    "validate_config",
    "CounterfactualUnit",
    "CounterfactualBatch",
    "ObservedRow",
    "ObservedDataset",
    "infer_outcome_kind",
    "EstimationMethod",
    "EffectEstimates",
    "InterventionalEffects",
    "SeparableEffects",
    "OracleReport",
    "CellStats",
    "LsemCoefficients",
    "BoundsInput",
    "NdeBounds",
    "DiagnosticStatistic",
    "AuditReport",
    "ScenarioFlags",
    "IdentificationStrategy",
    "GridMethod",
    "GridSpec",
    "ParameterLists",
    "GridResultRow",
    "BiasStratum",
    "BiasSummary",
    "WorstCaseRow",
    "InteractionCell",
    "SweepRow",
    "default_values",
    "OutputFormat",
    "IoPaths",
    "RunConfig",
    "MediationError",
    "InvalidConfig",
    "ParseError",
    "SchemaError",
    "GridTooLarge",
    "FormatError",
    "EmptyFile",
    "EmptyCell",
    "PositivityViolation",
    "NotBinaryOutcome",
    "InvalidInput",
    "DegenerateStratum",
    "IoError",
    "NonFinite",
    "RankDeficient",
    "SettingFailed",
]
