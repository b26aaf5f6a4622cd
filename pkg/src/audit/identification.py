"""Rule table mapping scenario features to an identification route for the NDE."""

from ..models.audit import IdentificationStrategy, ScenarioFlags
from ..utils.logging_config import get_logger

logger = get_logger(__name__)


def classify_identification(flags: ScenarioFlags) -> IdentificationStrategy:
    """Pick how the NDE can be learned from factual data.

    No confounding of either kind gives the mediational g-formula. Any
    confounding with a linear structural model gives the LSEM route. Otherwise
    only the nonparametric bounds remain, and those need binary A, M and Y.
    """
    confounded = flags.has_intermediate_confounder or flags.has_crossworld_confounder
    if not confounded:
        strategy = IdentificationStrategy.POINT_NONPARAMETRIC
    elif flags.lsem_assumed:
        strategy = IdentificationStrategy.POINT_LSEM
    elif flags.all_binary:
        strategy = IdentificationStrategy.BOUNDS_ONLY
    else:
        strategy = IdentificationStrategy.NOT_IDENTIFIED
    logger.debug("identification_classified", strategy=strategy.value, **flags.model_dump())
    return strategy
