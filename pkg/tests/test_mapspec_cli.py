"""Map-spec ingestion, the command-line surface, and the on-disk cache."""

import json
import os

import pytest

from patlab import (
    ParseError,
    UnknownMap,
    ValidationError,
    load_map_spec,
    serialize,
    tent,
)
from patlab.cli import run

SHORTHANDS = [
    "tent",
    "sawtooth:2",
    "sawtooth:3",
    "alt_sawtooth:9",
    "logistic:3.5",
    "logistic:4",
    "one_minus_x_squared",
]


class TestLoadMapSpec:
    @pytest.mark.parametrize("text", SHORTHANDS)
    def test_round_trip(self, text):
        lm = load_map_spec(text)
        assert load_map_spec(serialize(lm)) == lm

    def test_exact_flags(self):
        assert load_map_spec("tent").exact
        assert load_map_spec("sawtooth:3").exact
        assert not load_map_spec("logistic:3.5").exact
        assert not load_map_spec("one_minus_x_squared").exact

    def test_logistic4_gets_exact_engine(self):
        lm = load_map_spec("logistic:4")
        assert lm.exact and lm.pwl == tent()
        assert "order-isomorphism" in lm.note
        # sampling still uses the genuine smooth formula
        assert lm.numeric().kind == "logistic"

    def test_inline_pwl_json(self):
        text = json.dumps(
            {
                "type": "pwl",
                "pieces": [
                    {"lo": "0", "hi": "1/2", "slope": "2", "intercept": "0"},
                    {"lo": "1/2", "hi": "1", "slope": "-2", "intercept": "2"},
                ],
            }
        )
        lm = load_map_spec(text)
        assert lm.pwl == tent()
        assert load_map_spec(serialize(lm)) == lm

    def test_file_path(self, tmp_path):
        path = tmp_path / "map.json"
        path.write_text(json.dumps({"type": "sawtooth", "N": 2}))
        assert load_map_spec(str(path)).label == "sawtooth:2"

    def test_gap_reported(self):
        bad = {
            "type": "pwl",
            "pieces": [
                {"lo": "0", "hi": "1/4", "slope": "2", "intercept": "0"},
                {"lo": "1/2", "hi": "1", "slope": "-2", "intercept": "2"},
            ],
        }
        with pytest.raises(ValidationError, match="gap"):
            load_map_spec(json.dumps(bad))

    def test_float_fields_rejected(self):
        bad = {
            "type": "pwl",
            "pieces": [{"lo": 0.1, "hi": "1", "slope": "1", "intercept": "0"}],
        }
        with pytest.raises(ParseError, match="rational string"):
            load_map_spec(json.dumps(bad))

    def test_missing_field(self):
        bad = {"type": "pwl", "pieces": [{"lo": "0", "hi": "1", "slope": "1"}]}
        # intercept defaults to 0; removing slope instead must fail
        assert load_map_spec(json.dumps(bad)).pwl is not None
        del bad["pieces"][0]["slope"]
        with pytest.raises(ParseError, match="slope"):
            load_map_spec(json.dumps(bad))

    def test_logistic_range(self):
        with pytest.raises(ValidationError):
            load_map_spec("logistic:0.5")

    def test_unknown(self):
        with pytest.raises(UnknownMap):
            load_map_spec("spirograph")
        with pytest.raises(UnknownMap):
            load_map_spec('{"type": "spirograph"}')

    def test_bad_json(self):
        with pytest.raises(ParseError):
            load_map_spec("{not json")


def run_cli(capsys, argv):
    code = run(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCli:
    def test_basic_envelope(self, capsys):
        code, out, _ = run_cli(capsys, ["basic", "--map", "tent", "--n", "4"])
        assert code == 0
        env = json.loads(out)
        assert env["map"] == "tent"
        assert env["n"] == 4
        assert env["exact"] is True
        assert env["engine_version"]
        assert env["elapsed_ms"] >= 0
        assert env["result"]["patterns"] == ["1423", "2134", "2143", "3142", "4231"]

    def test_shortest(self, capsys):
        code, out, _ = run_cli(capsys, ["shortest", "--map", "sawtooth:3", "--n-max", "8"])
        assert code == 0 and json.loads(out)["result"] == 5

    def test_avoiders_count_only(self, capsys):
        code, out, _ = run_cli(
            capsys, ["avoiders", "--patterns", "132,231", "--n", "5", "--count-only"]
        )
        assert code == 0 and json.loads(out)["result"] == 16

    def test_avoiders_listing(self, capsys):
        code, out, _ = run_cli(capsys, ["avoiders", "--patterns", "21", "--n", "4"])
        assert code == 0 and json.loads(out)["result"]["patterns"] == ["1234"]

    def test_count(self, capsys):
        code, out, _ = run_cli(capsys, ["count", "--patterns", "132,231", "--n", "10"])
        assert code == 0 and json.loads(out)["result"] == 512

    def test_bound(self, capsys):
        code, out, _ = run_cli(
            capsys, ["bound", "--map", "alt_sawtooth:9", "--method", "simple"]
        )
        assert code == 0
        assert json.loads(out)["result"] == {
            "component_count": 4,
            "bound": 10,
            "method": "simple",
            "orientation": "below",
        }

    def test_length_check(self, capsys):
        code, out, _ = run_cli(capsys, ["length-check", "--lengths", "6"])
        result = json.loads(out)["result"]
        assert code == 0
        assert result["satisfied"] is False
        assert (result["total"], result["required"]) == (6, 8)

    def test_check_basis(self, capsys):
        code, out, _ = run_cli(
            capsys, ["check-basis", "--patterns", "132,231", "--m-max", "4"]
        )
        assert code == 0 and json.loads(out)["result"] == [1, 2, 3, 4]

    def test_sample_is_labeled_approximate(self, capsys):
        code, out, _ = run_cli(
            capsys,
            [
                "sample", "--map", "logistic:3.5", "--n", "3",
                "--grid", "2000", "--random", "2000",
            ],
        )
        env = json.loads(out)
        assert code == 0
        assert env["exact"] is False
        assert "lower bound" in env["note"]

    def test_sample_scan_missing(self, capsys):
        code, out, _ = run_cli(
            capsys,
            [
                "sample", "--map", "logistic:3.5", "--n", "3",
                "--grid", "3000", "--random", "3000", "--scan-missing", "7",
            ],
        )
        env = json.loads(out)
        assert code == 0
        assert "first_missing_cap" in env["result"]

    def test_logistic4_note_in_exact_output(self, capsys):
        code, out, _ = run_cli(capsys, ["basic", "--map", "logistic:4", "--n", "3"])
        env = json.loads(out)
        assert code == 0
        assert env["exact"] is True
        assert "order-isomorphism" in env["note"]
        assert env["result"]["patterns"] == ["321"]

    def test_csv_format(self, capsys):
        code, out, _ = run_cli(
            capsys, ["basic", "--map", "tent", "--n", "3", "--format", "csv"]
        )
        lines = out.strip().splitlines()
        assert code == 0 and lines[0] == "pattern" and lines[1] == "321"

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "report.json"
        code, out, _ = run_cli(
            capsys, ["bound", "--map", "tent", "--out", str(path)]
        )
        assert code == 0 and out == ""
        assert json.loads(path.read_text())["result"]["bound"] == 4

    def test_version_and_usage(self, capsys):
        assert run_cli(capsys, ["--version"])[0] == 0
        assert run_cli(capsys, [])[0] == 2


class TestCliExitCodes:
    def test_safety_cap(self, capsys):
        code, _, err = run_cli(capsys, ["allowed", "--map", "tent", "--n", "12"])
        assert code == 2 and "--unsafe" in err

    def test_unsafe_lifts_cap(self, capsys):
        code, out, _ = run_cli(
            capsys, ["allowed", "--map", "tent", "--n", "11", "--unsafe"]
        )
        assert code == 0 and json.loads(out)["n"] == 11

    def test_unknown_map(self, capsys):
        assert run_cli(capsys, ["allowed", "--map", "bogus", "--n", "3"])[0] == 2

    def test_numeric_map_refused_by_exact_op(self, capsys):
        code, _, err = run_cli(capsys, ["basic", "--map", "logistic:3.5", "--n", "3"])
        assert code == 2 and "exact" in err

    def test_bad_pattern_text(self, capsys):
        assert run_cli(capsys, ["count", "--patterns", "1x2", "--n", "4"])[0] == 2

    def test_node_budget_limit(self, capsys):
        code, _, err = run_cli(
            capsys,
            ["avoiders", "--patterns", "132", "--n", "8", "--node-budget", "10"],
        )
        assert code == 3 and "budget" in err

    def test_cell_budget_limit(self, capsys):
        code, _, _ = run_cli(
            capsys,
            ["allowed", "--map", "sawtooth:4", "--n", "9", "--cell-budget", "100"],
        )
        assert code == 3

    def test_usage_error(self, capsys):
        # argparse reports unknown flags on stderr and exits 2
        assert run_cli(capsys, ["basic", "--map", "tent", "--frobnicate"])[0] == 2


class TestCache:
    def test_byte_identical_hits(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("PATLAB_CACHE_DIR", str(tmp_path))
        code1, out1, _ = run_cli(capsys, ["allowed", "--map", "tent", "--n", "5"])
        entries = list(tmp_path.iterdir())
        assert code1 == 0 and len(entries) == 1
        stored = entries[0].read_text()

        code2, out2, _ = run_cli(capsys, ["allowed", "--map", "tent", "--n", "5"])
        assert code2 == 0
        r1, r2 = json.loads(out1)["result"], json.loads(out2)["result"]
        canon = lambda r: json.dumps(r, sort_keys=True, separators=(",", ":"))
        assert canon(r1) == canon(r2) == stored

    def test_key_varies_with_n_and_map(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("PATLAB_CACHE_DIR", str(tmp_path))
        run_cli(capsys, ["allowed", "--map", "tent", "--n", "3"])
        run_cli(capsys, ["allowed", "--map", "tent", "--n", "4"])
        run_cli(capsys, ["allowed", "--map", "sawtooth:2", "--n", "3"])
        assert len(list(tmp_path.iterdir())) == 3

    def test_corrupt_entry_recomputed(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("PATLAB_CACHE_DIR", str(tmp_path))
        _, out1, _ = run_cli(capsys, ["allowed", "--map", "tent", "--n", "4"])
        (entry,) = list(tmp_path.iterdir())
        good = entry.read_text()
        entry.write_text("{truncated")
        code, out2, _ = run_cli(capsys, ["allowed", "--map", "tent", "--n", "4"])
        assert code == 0
        assert json.loads(out2)["result"] == json.loads(out1)["result"]
        assert entry.read_text() == good

    def test_disabled_without_env(self, capsys, tmp_path, monkeypatch):
        monkeypatch.delenv("PATLAB_CACHE_DIR", raising=False)
        code, _, _ = run_cli(capsys, ["allowed", "--map", "tent", "--n", "3"])
        assert code == 0 and not list(tmp_path.iterdir())
