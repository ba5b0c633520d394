from .search import (
    EncryptedIndex,
    SearchParams,
    canonical_word,
    index_build,
    index_search,
    recover_word,
    search_trapdoor,
)
from .anonymity import (
    AnonymityReport,
    DiversityReport,
    EquivalenceClass,
    GeneralizationHierarchy,
    MinimizationResult,
    discernibility_metric,
    generalize,
    hierarchy_from_rows,
    k_anonymity_check,
    l_diversity_check,
    load_hierarchy_csv,
    minimal_generalization,
    partition_by_qi,
)

__all__ = [
    "AnonymityReport",
    "DiversityReport",
    "EncryptedIndex",
    "EquivalenceClass",
    "GeneralizationHierarchy",
    "MinimizationResult",
    "SearchParams",
    "canonical_word",
    "discernibility_metric",
    "generalize",
    "hierarchy_from_rows",
    "index_build",
    "index_search",
    "k_anonymity_check",
    "l_diversity_check",
    "load_hierarchy_csv",
    "minimal_generalization",
    "partition_by_qi",
    "recover_word",
    "search_trapdoor",
]
