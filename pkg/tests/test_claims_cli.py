import json

import pytest

from fano10 import claims, cli
from fano10.claims import Config, REGISTRY, run, run_claim
from fano10.scalars import QQ, FieldDescriptor

REPORT_KEYS = ["id", "status", "computed", "expected", "provenance", "seed", "field", "consumed", "millis"]


class TestRegistry:
    def test_count_and_ids(self):
        assert [d.id for d in claims.list_claims()] == [f"C{k:02d}" for k in range(1, 22)]

    def test_c15_anchor(self):
        assert REGISTRY["C15"].anchor == "Prop. cogr eqs. (3.1)–(3.4)"

    def test_c20_deps(self):
        assert "wx_geometry" in REGISTRY["C20"].deps

    def test_provenance_tags(self):
        for d in claims.list_claims():
            assert d.expected and all(tag in ("PAPER", "TRIVIAL", "DERIVED") for _, tag in d.expected.values())

    def test_bad_tag_rejected(self):
        with pytest.raises(ValueError):
            claims.ClaimDescriptor("C99", "x", "a", (), "rational", "ANY", {"k": (1, "GUESS")}, lambda *a: None)

    def test_resolve(self):
        assert claims.resolve(["all"]) == list(REGISTRY)
        assert claims.resolve(["C11", "C02", "C11"]) == ["C02", "C11"]
        with pytest.raises(claims.UnknownClaim):
            claims.resolve(["C22"])


class TestRunner:
    def test_c11(self):
        r = run_claim("C11", Config())
        assert r.status == "pass" and r.computed["sym2_dual"] == [1, 4, 13, 12, 6]

    def test_c19(self):
        r = run_claim("C19", Config())
        assert r.status == "pass" and r.computed["moduli"] == 22 and r.computed["period_image"] == 20

    def test_report_schema(self):
        payload = json.loads(claims.report_json([run_claim("C11", Config())], Config()))
        assert list(payload) == ["version", "config", "reports"]
        assert payload["version"] == 1
        assert list(payload["reports"][0]) == REPORT_KEYS
        assert payload["reports"][0]["millis"] is None

    @pytest.mark.parametrize("body,needle", [
        (lambda cfg, F, rng: claims.Outcome({"x": 1}, {"first": True, "second": False}), "second"),
        (lambda cfg, F, rng: 1 / 0, "ZeroDivisionError"),
        (lambda cfg, F, rng: claims.Outcome({}, {}), "no checks ran"),
    ])
    def test_fail_report_has_witness(self, monkeypatch, body, needle):
        fake = claims.ClaimDescriptor("C01", "t", "a", (), "rational", frozenset({"rational"}),
                                      {"x": (1, "TRIVIAL")}, body)
        monkeypatch.setitem(REGISTRY, "C01", fake)
        r = run_claim("C01", Config())
        assert r.status == "fail" and needle in r.witness

    def test_skipped_never_passes(self):
        reports, status = run(["C06", "C11"], Config(field=QQ))
        by = {r.id: r.status for r in reports}
        assert by == {"C06": "skipped", "C11": "pass"} and status != 0

    def test_min_characteristic_skip(self):
        r = run_claim("C20", Config(field=FieldDescriptor.prime(29)))
        assert r.status == "skipped" and "31" in (r.witness or "")

    def test_seed_changes_sampling_not_results(self):
        a = run_claim("C07", Config(seed=1, samples=20))
        b = run_claim("C07", Config(seed=2, samples=20))
        assert a.status == b.status == "pass"

    def test_deterministic_jobs(self):
        ids = ["C01", "C05", "C11", "C14", "C15", "C17"]
        cfg = Config(seed=3)
        one = claims.report_json(run(ids, cfg, jobs=1)[0], cfg)
        two = claims.report_json(run(ids, cfg, jobs=3)[0], cfg)
        assert one == two

    def test_timings_recorded_only_on_request(self):
        r = run_claim("C14", Config(timings=True))
        assert isinstance(r.millis, int)

    def test_rng_streams_are_keyed(self):
        a = claims.claim_rng(0, "C07", "x").random()
        assert a == claims.claim_rng(0, "C07", "x").random()
        assert a != claims.claim_rng(0, "C08", "x").random()
        assert a != claims.claim_rng(1, "C07", "x").random()


class TestCli:
    def test_list(self, capsys):
        assert cli.main(["list"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert len(out) == 21 and out[14].startswith("C15")

    def test_verify_exit_zero(self, capsys):
        assert cli.main(["verify", "C11", "C14"]) == 0
        assert "2/2 passed" in capsys.readouterr().out

    def test_verify_json_stdout(self, capsys):
        assert cli.main(["verify", "C17", "--json", "-"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["reports"][0]["id"] == "C17"

    def test_verify_json_file(self, tmp_path):
        path = tmp_path / "r.json"
        assert cli.main(["verify", "C18", "--json", str(path)]) == 0
        assert json.loads(path.read_text(encoding="utf-8"))["reports"][0]["status"] == "pass"

    def test_skipped_exit_nonzero(self, capsys):
        assert cli.main(["verify", "C06", "--field", "rational"]) != 0

    def test_unknown_claim(self, capsys):
        assert cli.main(["verify", "C99"]) == 2
        assert "C99" in capsys.readouterr().err

    @pytest.mark.parametrize("field", ["fp:9", "fp:3", "banana", "fp2:4"])
    def test_invalid_field(self, field, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["verify", "C01", "--field", field])
        assert exc.value.code == 2

    @pytest.mark.parametrize("flag", ["--samples", "--jobs"])
    def test_non_positive(self, flag, capsys):
        with pytest.raises(SystemExit):
            cli.main(["verify", "C01", flag, "0"])

    def test_ledger(self, capsys):
        assert cli.main(["ledger"]) == 0
        out = capsys.readouterr().out
        assert "Om2G(-1)|W" in out and "[0, 0, 0, 5, 0]" in out

    def test_model_roundtrip(self, tmp_path, capsys):
        path = tmp_path / "x.model"
        assert cli.main(["model", "dump", "--seed", "7", "-o", str(path)]) == 0
        assert cli.main(["model", "check", str(path)]) == 0
        assert "seed 7" in capsys.readouterr().out

    def test_model_check_rejects_garbage(self, tmp_path, capsys):
        path = tmp_path / "bad.model"
        path.write_text("not a model\n", encoding="utf-8")
        assert cli.main(["model", "check", str(path)]) == 1
