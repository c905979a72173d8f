"""Integration: annotations created over HTTP feed the evaluation toolchain."""

from fastapi.testclient import TestClient

from accuscore.cli import main
from accuscore.service import create_app
from conftest import criterion


@criterion("annotation round trip: a span posted over HTTP aligns EXACT against gold")
def test_http_annotation_feeds_alignment(corpus_dir, fixtures_dir, tmp_path, capsys):
    annotations_dir = tmp_path / "annotations"
    client = TestClient(create_app(corpus_dir, annotations_dir=annotations_dir))

    posted = client.post(
        "/api/annotations/ui-user/nuggets-heat",
        json=[{"start_token": 8, "end_token": 8, "category": "NAME"}],
    )
    assert posted.status_code == 200
    assert client.post("/api/annotations/ui-user/nuggets-heat/submit").status_code == 200

    saved = annotations_dir / "ui-user" / "nuggets-heat.csv"
    assert saved.exists()

    # The stored file passes validation as-is.
    assert main(
        ["validate", str(saved), "--role", "REPORTED", "--strict",
         "--corpus", str(corpus_dir)]
    ) == 0
    assert "0 error(s), 0 warning(s)" in capsys.readouterr().err

    # Aligned against the gold list, the posted span is an EXACT match.
    out = tmp_path / "alignment.csv"
    assert main(
        ["align", "--gsml", str(fixtures_dir / "gsml_nuggets_heat.csv"),
         "--rml", str(saved), "-o", str(out), "--corpus", str(corpus_dir),
         "--deterministic"]
    ) == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert "nuggets-heat,GSM-1,GSM-2,EXACT,1" in lines

    # A span beyond the document cannot be stored through the API either.
    rejected = client.post(
        "/api/annotations/ui-user-2/nuggets-heat",
        json=[{"start_token": 99, "end_token": 100, "category": "NAME"}],
    )
    assert rejected.status_code == 422
    assert [i["code"] for i in rejected.json()["issues"]] == ["span-out-of-range"]
