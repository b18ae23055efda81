# tests/test_cli.py
import pytest

from smcmartin.chain.parse_model import parse_model
from smcmartin.chain.presets import eg3
from smcmartin.main import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -----------------------
# Exact commands
# -----------------------
def test_freq_table(capsys):
    code, out, _ = run(capsys, "freq", "eg2")
    assert code == 0
    assert out == "M = [[3/2, 1], [1/2, 1]]\neigenvalue = 2\ne = (2/3, 1/3)\n"


def test_freq_csv(capsys):
    _, out, _ = run(capsys, "freq", "eg2", "--format", "csv")
    assert out.splitlines() == ["letter,frequency", "a,2/3", "b,1/3"]


@pytest.mark.parametrize("argv,expected", [
    (["prob", "eg1", "ab", "abb"], "1/2"),
    (["prob", "eg3", "ba", "bca"], "1/4"),
    (["nstep", "eg3", "a", "bca", "2"], "1/16"),
    (["nstep", "eg4", "a", "a", "3", "--param", "q=1/2"], "1/8"),
    (["green", "eg3", "a", "bca"], "1/16"),
    (["green", "eg4", "a", "a"], "2"),
    (["kernel", "eg3", "ba", "bca"], "4"),
    (["theta", "eg3", "bab", "ba"], "9/32"),
    (["eg3", "rho", "1/2,const:b,const:b", "1/2,const:c,const:c"], "30/49"),
    (["eg3", "rho", "0,-,const:b", "0,-,const:c"], "2/3"),
])
def test_single_values(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out == expected + "\n"


def test_single_value_as_csv(capsys):
    _, out, _ = run(capsys, "kernel", "eg3", "ba", "bab", "--format", "csv")
    assert out.splitlines() == ["z,x,kernel", "ba,bab,2"]


def test_green_with_intermediate_words(capsys):
    _, out, _ = run(capsys, "green", "eg3", "a", "bca", "--intermediate", "--format", "csv")
    rows = out.splitlines()
    assert rows[:2] == ["field,value", "green,1/16"]
    assert sorted(rows[2:]) == ["intermediate,a", "intermediate,ba", "intermediate,bca"]


def test_transience_reports_non_transient_words(capsys):
    code, out, _ = run(capsys, "transience", "eg1", "b")
    assert code == 0
    assert "NonTransientError" in out
    assert "false" in out


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "eg3", "--format", "csv")
    assert code == 0
    assert out.startswith("property,value\n")


def test_export_preset_round_trips(capsys, tmp_path):
    _, out, _ = run(capsys, "export-preset", "eg3")
    assert parse_model(out).rules == eg3().rules
    path = tmp_path / "eg3.smc"
    path.write_text(out, encoding="utf-8")
    _, again, _ = run(capsys, "green", str(path), "a", "bca")
    assert again == "1/16\n"


def test_harmonic(capsys):
    code, out, _ = run(capsys, "harmonic", "test-harmonic", "--depth", "6")
    assert code == 0
    assert "3/2" in out
    assert out.rstrip().endswith("verified 63 words of length <= 32: Pf = f on all")


def test_harmonic_k_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("SMC_HARMONIC_K", "1/3")
    _, out, _ = run(capsys, "harmonic", "test-harmonic", "--depth", "4", "--verify-len", "8", "--format", "csv")
    assert "1,ab,5/3" in out.splitlines()


# -----------------------
# Eg3 boundary commands
# -----------------------
def test_phi(capsys):
    _, out, _ = run(capsys, "eg3", "phi", "1/2,const:c,const:b", "--out-depth", "12", "--format", "csv")
    assert "bits,000100100100" in out.splitlines()
    assert "sparse_positions,3 6 9" in out.splitlines()


def test_psi(capsys):
    _, out, _ = run(capsys, "eg3", "psi", "1/2,const:b,const:b", "--format", "csv")
    header, row = out.splitlines()
    assert header == "lambda,y,z,y_error,z_error"
    lam, y, z = (float(v) for v in row.split(",")[:3])
    assert (lam, y, z) == pytest.approx((0.5, 1 / 7, 1 / 7))


def test_rho_mixed_pair_carries_a_note(capsys):
    code, out, _ = run(capsys, "eg3", "rho", "0,-,const:b", "1/2,const:b,const:b")
    assert code == 0
    assert "note" in out


def test_rho_direct_check(capsys):
    _, out, _ = run(capsys, "eg3", "rho", "1/4,random:1,random:2", "1/4,random:1,random:3",
                    "--check-depth", "30", "--format", "csv")
    fields = dict(line.split(",", 1) for line in out.splitlines()[1:])
    assert set(fields) == {"rho", "direct_sum", "tail_bound"}


def test_dim(capsys):
    code, out, _ = run(capsys, "eg3", "dim", "1/2", "--format", "csv")
    assert code == 0
    lam, estimate, analytic = (float(v) for v in out.splitlines()[1].split(","))
    assert lam == 0.5 and abs(estimate - 2 / 3) < 0.1
    assert analytic == pytest.approx(2 / 3)


def test_empty_cloud(capsys):
    code, out, _ = run(capsys, "eg3", "cloud", "--samples", "0", "--seed", "1")
    assert code == 0
    assert out == "lambda,y,z\n"


def test_cloud_to_file_is_deterministic(capsys, tmp_path):
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (first, second):
        code, out, _ = run(capsys, "eg3", "cloud", "--samples", "7", "--seed", "5", "--output", str(path))
        assert code == 0 and out == ""
    assert first.read_text() == second.read_text()
    assert len(first.read_text().splitlines()) == 8


def test_lipschitz(capsys):
    code, out, _ = run(capsys, "eg3", "lipschitz", "--pairs", "50", "--seed", "2", "--r-grid", "1")
    assert code == 0
    assert "trend_max_abs_slope_r=1" in out


# -----------------------
# Reproducibility and errors
# -----------------------
def test_simulate_is_reproducible(capsys):
    _, first, _ = run(capsys, "simulate", "eg3", "--steps", "6", "--seed", "9")
    _, second, _ = run(capsys, "simulate", "eg3", "--steps", "6", "--seed", "9")
    assert first == second
    assert len(first.splitlines()) == 8


@pytest.mark.parametrize("argv", [
    ["simulate", "eg3"],
    ["eg3", "cloud", "--samples", "5"],
    ["freq-sim", "eg2"],
])
def test_randomized_commands_need_a_seed(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "needs --seed" in err


@pytest.mark.parametrize("argv", [
    ["prob", "eg1"],
    ["simulate", "eg3", "--seed", "1", "--steps", "-1"],
    ["nonsense"],
])
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


@pytest.mark.parametrize("argv,name", [
    (["classify", "eg9"], "UnknownPresetError"),
    (["kernel", "eg3", "a", "bb"], "UnreachableTargetError"),
    (["freq", "eg3"], "NotPrimitiveError"),
    (["harmonic", "eg1"], "HypothesisError"),
    (["eg3", "rho", "1/2,-,const:b", "0,-,const:b"], "BoundaryPointError"),
    (["nstep", "eg4", "a", "a", "1", "--param", "q"], "ParameterError"),
])
def test_domain_errors(capsys, argv, name):
    code, out, err = run(capsys, *argv)
    assert code == 1
    assert out == ""
    assert err.startswith(f"{name}: ")


def test_unwritable_output_is_a_domain_error(capsys, tmp_path):
    target = tmp_path / "missing" / "x.txt"
    code, out, err = run(capsys, "freq", "eg2", "--output", str(target))
    assert code == 1
    assert out == ""
    assert err.startswith(f"ParameterError: cannot write {target}: ")


def test_count_overflow_is_a_budget_error(capsys):
    code, _, err = run(capsys, "freq-sim", "eg2", "--steps", "70", "--runs", "1", "--seed", "1")
    assert code == 1
    assert err.startswith("BudgetError: ")


def test_deep_dimension_fit(capsys):
    code, out, _ = run(capsys, "eg3", "dim", "1/2", "--depth", "1000", "--format", "csv")
    assert code == 0
    assert abs(float(out.splitlines()[1].split(",")[1]) - 2 / 3) < 0.1


def test_shared_flags_before_the_subcommand(capsys):
    _, after, _ = run(capsys, "eg3", "cloud", "--samples", "4", "--seed", "3")
    code, before, _ = run(capsys, "--seed", "3", "eg3", "cloud", "--samples", "4")
    assert code == 0
    assert before == after
    _, out, _ = run(capsys, "--format", "csv", "freq", "eg2")
    assert out.splitlines()[0] == "letter,frequency"
