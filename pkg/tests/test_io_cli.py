import csv
import io
import json
from fractions import Fraction

import pytest

from fusionlab import ValidationError, build_tlj_ainf, parse_multiplier_spec, parse_ring_spec, ring_spec_to_json, run_cli
from fusionlab.builders import FreeProductRing, TLJRing
from fusionlab.io import SchemaError, dumps, label_from_json, label_to_json, parse_element, write_csv

S3_TABLE = [
    [0, 1, 2, 3, 4, 5],
    [1, 0, 3, 2, 5, 4],
    [2, 4, 0, 5, 1, 3],
    [3, 5, 1, 4, 0, 2],
    [4, 2, 5, 0, 3, 1],
    [5, 3, 4, 1, 2, 0],
]

SPEC_CORPUS = [
    {"kind": "tlj_ainf", "lambda_inv": 5},
    {"kind": "tlj_ainf", "lambda_inv": 4},
    {"kind": "tlj_ainf", "lambda_inv": "9/2"},
    {"kind": "tlj_ainf", "lambda_inv": "6.25"},
    {"kind": "tlj_ainf", "lambda_inv": 4.5},
    {"kind": "tlj_finite", "m": 5},
    {"kind": "tlj_finite", "m": 12},
    {"kind": "group", "family": "Z"},
    {"kind": "group", "family": "Z", "params": {"d": 2}},
    {"kind": "group", "family": "Zn", "params": {"n": 7}},
    {"kind": "group", "family": "free", "params": {"k": 2}},
    {"kind": "group", "family": "free", "params": {"k": 3}},
    {"kind": "group", "family": "table", "params": {"table": S3_TABLE}},
    {"kind": "su_n", "n": 2},
    {"kind": "su_n", "n": 3, "q": 1},
    {"kind": "su_n", "n": 3, "q": "0.9"},
    {"kind": "su_n", "n": 4, "q": 0.8},
    {"kind": "product", "factors": [{"kind": "tlj_ainf", "lambda_inv": 5}, {"kind": "group", "family": "Zn", "params": {"n": 2}}]},
    {"kind": "free_product", "factors": [{"kind": "tlj_ainf", "lambda_inv": 5}, {"kind": "tlj_ainf", "lambda_inv": 4}]},
    {"kind": "free_product", "factors": [{"kind": "group", "family": "Zn", "params": {"n": 2}}, {"kind": "group", "family": "Zn", "params": {"n": 3}}], "schema_version": 1},
]


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_cli(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


class TestRingSpecs:
    @pytest.mark.parametrize("spec", SPEC_CORPUS, ids=lambda s: json.dumps(s)[:60])
    def test_round_trip(self, spec):
        first = ring_spec_to_json(parse_ring_spec(json.dumps(spec)))
        second = ring_spec_to_json(parse_ring_spec(json.dumps(first)))
        assert first == second
        assert first["schema_version"] == 1

    def test_corpus_size(self):
        assert len(SPEC_CORPUS) == 20

    def test_examples(self):
        r = parse_ring_spec('{"kind":"tlj_ainf","lambda_inv":5}')
        assert isinstance(r, TLJRing) and r.lambda_inv == 5
        fc = parse_ring_spec(SPEC_CORPUS[18])
        assert isinstance(fc, FreeProductRing)
        assert fc.dim(((0, 1), (1, 1))) == 12

    def test_decimal_strings_exact(self):
        r = parse_ring_spec({"kind": "tlj_ainf", "lambda_inv": "4.5"})
        assert r.lambda_inv == Fraction(9, 2)
        assert ring_spec_to_json(r)["lambda_inv"] == "9/2"

    def test_below_four(self):
        from fusionlab import ParameterError

        with pytest.raises(ParameterError):
            parse_ring_spec('{"kind":"tlj_ainf","lambda_inv":3}')

    @pytest.mark.parametrize(
        "spec,pointer",
        [
            ({"kind": "nope"}, "/kind"),
            ({"kind": "tlj_ainf"}, ""),
            ({"kind": "tlj_ainf", "lambda_inv": "abc"}, "/lambda_inv"),
            ({"kind": "tlj_finite", "m": 2.5}, "/m"),
            ({"kind": "product", "factors": [{"kind": "tlj_ainf", "lambda_inv": 5}, {"kind": "bogus"}]}, "/factors/1/kind"),
            ({"kind": "tlj_ainf", "lambda_inv": 5, "extra": 1}, ""),
            ({"kind": "tlj_ainf", "lambda_inv": 5, "schema_version": 2}, "/schema_version"),
        ],
    )
    def test_schema_errors_have_pointers(self, spec, pointer):
        with pytest.raises(SchemaError) as info:
            parse_ring_spec(spec)
        assert info.value.pointer == pointer

    def test_invalid_json(self):
        with pytest.raises(SchemaError):
            parse_ring_spec("{not json")


class TestMultiplierSpecs:
    def test_point_and_measure(self):
        r = build_tlj_ainf(5)
        assert parse_multiplier_spec({"kind": "point", "t": "5.5"}, r)(1) == Fraction(9, 2) / 4
        phi = parse_multiplier_spec({"kind": "measure", "atoms": [[1, "0.5"], [3, "1/2"]]}, r)
        assert phi(1) == Fraction(1, 2) * (Fraction(0, 4) + Fraction(2, 4))

    def test_regular_trivial(self):
        r = build_tlj_ainf(5)
        assert parse_multiplier_spec('{"kind":"regular"}', r)(0) == 1
        assert parse_multiplier_spec('{"kind":"trivial"}', r)(7) == 1

    def test_table(self):
        r = parse_ring_spec({"kind": "su_n", "n": 3})
        phi = parse_multiplier_spec({"kind": "table", "values": [[[], 1], [[1], "1/3", 0], [[1, 1], 0.5, 0.25]], "default": 0}, r)
        assert phi((1,)) == Fraction(1, 3)
        assert phi((1, 1)) == complex(0.5, 0.25)
        assert phi((2,)) == 0

    def test_table_bad_label(self):
        r = build_tlj_ainf(5)
        from fusionlab import LabelError

        with pytest.raises(LabelError):
            parse_multiplier_spec({"kind": "table", "values": [[-3, 1]]}, r)

    def test_free_product(self):
        fc = parse_ring_spec(SPEC_CORPUS[18])
        psi = parse_multiplier_spec({"kind": "free_product", "r": "1/2", "parts": [{"kind": "trivial"}, {"kind": "point", "t": 2}]}, fc)
        assert psi(((0, 1), (1, 1))) == Fraction(1, 4) * 1 * Fraction(1, 3)

    def test_extend_zero_variants(self):
        Z = parse_ring_spec({"kind": "group", "family": "Z"})
        psi = parse_multiplier_spec({"kind": "extend_zero", "subring": {"kind": "grading_kernel", "grading": {"kind": "mod", "modulus": 3}}, "inner": {"kind": "trivial"}}, Z)
        assert [psi(k) for k in range(4)] == [1, 0, 0, 1]
        S = parse_ring_spec({"kind": "su_n", "n": 3})
        ind = parse_multiplier_spec({"kind": "extend_zero", "subring": {"kind": "grading_kernel", "grading": {"kind": "sun"}}, "inner": {"kind": "trivial"}}, S)
        assert ind((2, 1)) == 1 and ind((1,)) == 0
        Z2 = parse_ring_spec({"kind": "group", "family": "Zn", "params": {"n": 2}})
        full = parse_multiplier_spec({"kind": "extend_zero", "subring": {"kind": "labels", "labels": [1]}, "inner": {"kind": "trivial"}}, Z2)
        assert full(1) == 1

    def test_wrong_ring(self):
        Z = parse_ring_spec({"kind": "group", "family": "Z"})
        with pytest.raises(ValidationError):
            parse_multiplier_spec({"kind": "point", "t": 1}, Z)

    def test_schema_pointer(self):
        r = build_tlj_ainf(5)
        with pytest.raises(SchemaError) as info:
            parse_multiplier_spec({"kind": "free_product", "r": 1, "parts": [{"kind": "regular"}, {"kind": "zzz"}]}, r)
        assert info.value.pointer == "/parts/1/kind"


class TestLabelsAndElements:
    def test_label_conversion(self):
        fc = parse_ring_spec(SPEC_CORPUS[18])
        label = label_from_json(fc, [[0, 1], [1, 2]])
        assert label == ((0, 1), (1, 2))
        assert label_to_json(label) == [[0, 1], [1, 2]]

    def test_elements(self):
        r = build_tlj_ainf(5)
        assert parse_element(r, "X") == r.generator()
        x = parse_element(r, '[[0, 1], [2, "1/2"], [3, 1, 2]]')
        assert x[2] == Fraction(1, 2) and x[3] == complex(1, 2)
        with pytest.raises(ValidationError):
            parse_element(build_tlj_finite_ring(), "X")


def build_tlj_finite_ring():
    return parse_ring_spec({"kind": "tlj_finite", "m": 6})


class TestOutput:
    def test_float_digits(self):
        text = dumps({"a": 0.1, "b": 1.0, "c": Fraction(1, 3), "d": 2, "e": float("nan")})
        obj = json.loads(text)
        assert '"a": 0.10000000000000001' in text
        assert obj["b"] == 1.0 and obj["d"] == 2 and obj["e"] is None
        assert obj["c"] == pytest.approx(1 / 3, rel=1e-16)

    def test_complex(self):
        assert json.loads(dumps({"z": 1 + 2j}))["z"] == {"re": 1.0, "im": 2.0}

    def test_csv(self):
        text = write_csv(["k", "v"], [(0, 1), (1, 0.5), (2, Fraction(1, 3))])
        rows = list(csv.reader(io.StringIO(text)))
        assert rows[0] == ["k", "v"] and len(rows) == 4
        assert rows[3][1] == "0.33333333333333331"


class TestCLI:
    def test_admissible_example(self):
        code, out, _ = cli("tlj", "admissible", "--lambda-inv", "5", "--t", "5.5", "--level", "8")
        assert code == 0
        doc = json.loads(out)
        assert set(doc) == {"command", "inputs", "result", "witnesses", "tolerances", "versions"}
        assert doc["result"]["status"] == "Rejected" and doc["result"]["level"] == 0
        assert doc["witnesses"]["eigenvalue"] == -0.5

    def test_plancherel_example(self):
        code, out, _ = cli("tlj", "plancherel", "--n", "3", "--m", "0")
        assert code == 0
        assert abs(json.loads(out)["result"]["value"]) < 1e-8

    def test_spectral_norm_example(self, tmp_path):
        path = tmp_path / "tlj5.json"
        path.write_text('{"kind":"tlj_ainf","lambda_inv":5}')
        code, out, _ = cli("spectral", "norm", "--ring", str(path), "--generator", "X", "--truncation", "500")
        assert code == 0
        assert json.loads(out)["result"]["estimate"] == pytest.approx(4.0, abs=1e-3)

    def test_byte_stable(self):
        argv = ("spectral", "amenability", "--lambda-inv", "5", "--generator", "X", "--truncation", "100")
        assert cli(*argv)[1] == cli(*argv)[1]

    def test_ring_commands(self):
        ring = json.dumps(SPEC_CORPUS[15])
        code, out, _ = cli("ring", "describe", "--ring", ring, "--max-level", "2")
        assert code == 0 and len(json.loads(out)["result"]["labels"]) == 4
        code, out, _ = cli("ring", "fuse", "--ring", json.dumps(SPEC_CORPUS[14]), "--a", "[1]", "--b", "[1,1]")
        assert json.loads(out)["result"] == [[[], 1], [[2, 1], 1]]
        code, out, _ = cli("ring", "fuse", "--ring", json.dumps(SPEC_CORPUS[10]), "--a", "ab", "--b", "Ba")
        assert json.loads(out)["result"] == [[[1, 1], 1]]

    def test_dims_csv(self):
        code, out, _ = cli("ring", "dims", "--lambda-inv", "5", "--max-level", "4", "--csv")
        rows = list(csv.reader(io.StringIO(out)))
        assert code == 0 and rows[0] == ["label", "level", "dim"] and len(rows) == 6
        assert rows[-1] == ["4", "4", "76"]

    def test_mult_eval_csv_contract(self):
        code, out, _ = cli("mult", "eval", "--lambda-inv", "5", "--t", "3", "--max-level", "10", "--csv")
        rows = list(csv.reader(io.StringIO(out)))
        assert code == 0
        assert rows[0] == ["label", "dim", "value"] and len(rows) == 12
        assert rows[2][:2] == ["1", "4"] and float(rows[2][2]) == pytest.approx(0.5)

    def test_moments_csv(self):
        code, out, _ = cli("tlj", "moments", "--lambda-inv", "5", "--mult", '{"kind":"regular"}', "--count", "6", "--csv")
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["k", "m_k"] and len(rows) == 8
        assert [r[1] for r in rows[1:]] == ["1", "1", "2", "5", "14", "42", "132"]

    def test_convolve(self):
        code, out, _ = cli("mult", "convolve", "--lambda-inv", "5", "--mult", '{"kind":"regular"}', "--x", "X", "--max-level", "2")
        assert code == 0
        values = json.loads(out)["result"]["values"]
        # unit coefficient of X H_n X divided by d(H_n)
        assert [v[2] for v in values] == [2, 0.75, pytest.approx(1 / 11, rel=1e-15)]

    def test_norms_and_l1(self):
        code, out, _ = cli("tlj", "norms", "--lambda-inv", "5", "--element", "X")
        assert json.loads(out)["result"] == {"universal": 5, "reduced": 4}
        code, out, _ = cli("tlj", "l1range", "--lambda-inv", "5", "--t", "-1.2")
        assert json.loads(out)["result"]["first_index"] == 10

    @pytest.mark.parametrize(
        "argv,code",
        [
            (("ring", "nope"), 2),
            (("tlj", "admissible", "--lambda-inv", "5", "--level", "4"), 2),
            (("tlj", "plancherel", "--n", "x", "--m", "0"), 2),
            (("ring", "describe", "--ring", "/no/such/file.json"), 2),
            (("ring", "describe", "--ring", '{"kind":"tlj_ainf","lambda_inv":3}'), 3),
            (("ring", "describe", "--ring", '{"kind":"bogus"}'), 3),
            (("ring", "fuse", "--lambda-inv", "5", "--a", "-1", "--b", "0"), 3),
            (("tlj", "plancherel", "--n", "30", "--m", "30", "--tol", "1e-30"), 4),
        ],
    )
    def test_exit_codes(self, argv, code):
        got, _, err = cli(*argv)
        assert got == code, err
        assert json.loads(err)["exit_code"] == code

    def test_help(self):
        assert cli("--help")[0] == 0

    def test_schema_error_pointer_on_stderr(self):
        code, _, err = cli("ring", "describe", "--ring", '{"kind":"product","factors":[{"kind":"su_n","n":"3"},{"kind":"su_n","n":2}]}')
        assert code == 3
        assert json.loads(err)["pointer"] == "/factors/0/n"
