"""Well-known taxonomy, dimension, and note names.

The engine is schema-driven: parsing and validation accept whatever
taxonomies a structure file declares. The goal-oriented layers (queries,
statistics, gap analysis) additionally interpret the names below when
they are present. A repository that renames them still parses and
validates; it just gets less out of the query layer.
"""

from __future__ import annotations

from typing import Final

FACTOR: Final = "factor"
DESCRIPTION: Final = "description"
DATASET: Final = "dataset"
APPROACH: Final = "approach"

CORE_TAXONOMIES: Final = (FACTOR, DESCRIPTION, DATASET, APPROACH)

SCOPE_DIMENSION: Final = "scope"
EVIDENCE_DIMENSION: Final = "empirical evidence"
PRACTITIONERS_DIMENSION: Final = "practitioners involved"
ACCESSIBILITY_DIMENSION: Final = "accessibility"

POSITIVE: Final = "yes"
NEGATIVE: Final = "no"

NAME_NOTE: Final = "name"
ALIASES_NOTE: Final = "aliases"
DEFINITION_NOTE: Final = "definition"
IMPACT_NOTE: Final = "impact"

#: Accessibility characteristics that count a resource as public.
PUBLIC_ACCESS: Final[dict[str, frozenset[str]]] = {
    DATASET: frozenset({"available in paper", "open access link"}),
    APPROACH: frozenset({"open access", "open source"}),
}

#: Accessibility characteristics that count as undisclosed.
UNDISCLOSED_ACCESS: Final = frozenset({"not disclosed"})

#: Separator for the multi-valued aliases note.
ALIAS_SEPARATOR: Final = ";"
