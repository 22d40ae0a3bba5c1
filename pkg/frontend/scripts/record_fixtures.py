"""Record seed-corpus API responses into tests/fixtures/.

The UI's contract tests run against these recordings, so the frontend
test suite needs no running service.  Re-run after changing the seed
corpus or the API payloads:

    python3 frontend/scripts/record_fixtures.py
"""

from __future__ import annotations

import json
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from reqont.service import API_PREFIX, SnapshotHolder, create_app

HERE = Path(__file__).resolve().parent
REPO_ROOT = HERE.parent.parent
FIXTURES = HERE.parent / "tests" / "fixtures"

RECORDINGS = {
    "schema.json": ("/schema", {}),
    "factors.json": ("/factors", {}),
    "factors_scope_word.json": ("/factors", {"scope": "word"}),
    "factors_scope_galaxy_400.json": ("/factors", {"scope": "galaxy"}),
    "factor_detail_containing_subflows.json": ("/factors/containing-subflows", {}),
    "factor_unknown_404.json": ("/factors/unknown-factor", {}),
    "descriptions.json": ("/descriptions", {}),
    "datasets.json": ("/datasets", {}),
    "approaches.json": ("/approaches", {}),
    "stats.json": ("/stats", {}),
    "gaps.json": ("/gaps", {}),
    "authors.json": ("/authors", {}),
    "validation.json": ("/validation", {}),
}

EMPTY_STRUCTURE_SOURCE = REPO_ROOT / "seed" / "structure.json"


def dump(path: Path, payload: object) -> None:
    path.write_text(json.dumps(payload, indent=2, ensure_ascii=False) + "\n", "utf-8")


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)

    client = TestClient(create_app(SnapshotHolder(REPO_ROOT / "seed")))
    for name, (path, params) in RECORDINGS.items():
        response = client.get(f"{API_PREFIX}{path}", params=params)
        dump(FIXTURES / name, response.json())
        print(f"{name}: {response.status_code}")

    # stats for a corpus with no extractions at all (all-zero dashboard)
    with tempfile.TemporaryDirectory() as tmp:
        empty = Path(tmp) / "repo"
        (empty / "extractions").mkdir(parents=True)
        (empty / "structure.json").write_bytes(EMPTY_STRUCTURE_SOURCE.read_bytes())
        empty_client = TestClient(create_app(SnapshotHolder(empty)))
        response = empty_client.get(f"{API_PREFIX}/stats")
        dump(FIXTURES / "stats_empty.json", response.json())
        print(f"stats_empty.json: {response.status_code}")


if __name__ == "__main__":
    main()
