"""Record real API responses for the dashboard test suite.

Drives the actual service against the committed 5-node fixture snapshot
and saves every request/response pair the dashboard tests replay. Rerun
after any API change:

    python3 frontend/tests/record_fixtures.py
"""

from __future__ import annotations

import json
import tempfile
from pathlib import Path

from click.testing import CliRunner
from fastapi.testclient import TestClient

from ecoimpact.cli import main as cli_main
from ecoimpact.service import create_app

ROOT = Path(__file__).resolve().parents[2]
FIXTURE = ROOT / "tests" / "data" / "fixture_5node.ndjson"
SETS_DIR = ROOT / "tests" / "data" / "sets"
OUT = Path(__file__).resolve().parent / "fixtures" / "api-fixtures.json"


def stable(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def main() -> None:
    tmp = Path(tempfile.mkdtemp())
    snapshot_path = tmp / "snapshot.json"
    result = CliRunner().invoke(
        cli_main, ["ingest", str(FIXTURE), "-o", str(snapshot_path)]
    )
    assert result.exit_code == 0, result.output

    mech_sets = [
        {"label": path.stem, "packages": path.read_text().split()}
        for path in sorted(SETS_DIR.glob("*.txt"))
    ]

    entries = []

    def record(method: str, path: str, *, query: str = "", body=None, response=None):
        entries.append(
            {
                "method": method,
                "path": path,
                "query": query,
                "body": stable(body) if body is not None else "",
                "status": response.status_code,
                "contentType": response.headers.get("content-type", ""),
                "payload": response.text,
            }
        )

    selection_bodies = [
        {"preset": "improvement", "tau": 0.8, "pinned": [], "excluded": []},
        {"preset": "improvement", "tau": 0.5, "pinned": [], "excluded": []},
        {"preset": "improvement", "tau": 0.8, "pinned": [], "excluded": ["alpha"]},
        {"preset": "improvement", "tau": 0.8, "pinned": ["echo"], "excluded": []},
        {"preset": "regression", "tau": 0.8, "pinned": [], "excluded": []},
    ]

    app = create_app(snapshot_path)
    with TestClient(app) as client:
        record("GET", "/v1/summary", response=client.get("/v1/summary"))
        for body in selection_bodies:
            response = client.post("/v1/selection?limit=200&offset=0", json=body)
            assert response.status_code == 200, response.text
            record(
                "POST",
                "/v1/selection",
                query="limit=200&offset=0",
                body=body,
                response=response,
            )
        for name in ("alpha", "bravo", "charlie", "echo"):
            record("GET", f"/v1/package/{name}", response=client.get(f"/v1/package/{name}"))
        record("GET", "/v1/package/nope", response=client.get("/v1/package/nope"))
        compare_body = {"sets": mech_sets}
        record(
            "POST", "/v1/compare", body=compare_body, response=client.post("/v1/compare", json=compare_body)
        )
        record(
            "POST",
            "/v1/compare",
            query="format=csv",
            body=compare_body,
            response=client.post("/v1/compare?format=csv", json=compare_body),
        )

    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(entries, indent=2) + "\n", encoding="utf-8")
    print(f"recorded {len(entries)} fixtures -> {OUT}")


if __name__ == "__main__":
    main()
