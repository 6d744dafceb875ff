from .catalogue import (
    CATALOGUE,
    CONSUME,
    FOLLOW_TECHNIQUES,
    GENERATE,
    TechniqueSpec,
    catalogue_csv,
    catalogue_rows,
    get_technique,
)
from .consumption import ConsumptionContext, TechniqueState, run_consumption_technique, select_targets
from .generation import (
    CompositionError,
    ContentSources,
    GeneratedContent,
    compose_status,
    pseudo_translate,
    shuffle_words,
)
from .trends import KeywordTrend, extract_trending_keywords

__all__ = [
    "CATALOGUE",
    "CONSUME",
    "FOLLOW_TECHNIQUES",
    "GENERATE",
    "CompositionError",
    "ConsumptionContext",
    "ContentSources",
    "GeneratedContent",
    "KeywordTrend",
    "TechniqueSpec",
    "TechniqueState",
    "catalogue_csv",
    "catalogue_rows",
    "compose_status",
    "extract_trending_keywords",
    "get_technique",
    "pseudo_translate",
    "run_consumption_technique",
    "select_targets",
    "shuffle_words",
]
