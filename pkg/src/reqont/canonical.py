"""Canonical JSON byte form shared by every serializer in the package.

Canonical form: UTF-8, keys sorted, two-space indentation, non-ASCII
characters kept literal, single trailing newline. Formatting a canonical
file is the identity, which is what makes `fmt --check` meaningful.
"""

from __future__ import annotations

import json
from typing import Any


def canonical_json_bytes(value: Any) -> bytes:
    """Serialize ``value`` to the package-wide canonical JSON byte form."""
    text = json.dumps(value, ensure_ascii=False, sort_keys=True, indent=2)
    return (text + "\n").encode("utf-8")
