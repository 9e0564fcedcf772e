import pytest

from server import check_majorization, check_ordering, compute_welfare, lorenz_table, verify_theorem

SPREAD = {"atoms": [[0, 0.5], [2, 0.5]]}
POINT = {"atoms": [[1, 1.0]]}
COIN = {"samples": [0, 1]}


class TestCheckOrdering:
    def test_ssd(self):
        assert check_ordering("SSD", SPREAD, POINT)["holds"] is True
        verdict = check_ordering("SSD", POINT, SPREAD)
        assert verdict["holds"] is False
        assert verdict["witness"]["point"] == 1.0

    def test_squared_pair(self):
        pair = {"u0": [[0, 0], [2, 2]], "v0": [[0, 0], [0.25, 0.0625], [0.5, 0.25], [0.75, 0.5625], [1, 1]]}
        assert check_ordering("UPPER", SPREAD, POINT, pair=pair)["holds"] is False

    def test_clause_defaults_to_identity_pair(self):
        verdict = check_ordering("UPPER", SPREAD, POINT, clause="T1.i")
        assert verdict["holds"] is True
        assert verdict["statement"] == "T1.i"

    def test_errors_become_value_error(self):
        with pytest.raises(ValueError, match="Ordering check failed"):
            check_ordering("SSD", {"atoms": []}, POINT)
        with pytest.raises(ValueError):
            check_ordering("XSD", SPREAD, POINT)


class TestWelfare:
    def test_mean(self):
        assert compute_welfare(COIN) == {"functional": "mean", "residual": None, "value": 0.5}

    def test_sgini(self):
        result = compute_welfare(COIN, "sgini", rho=2.0)
        assert result["value"] == pytest.approx(0.75)
        assert result["residual"] == pytest.approx(0.0, abs=1e-9)

    def test_yaari_identity_is_mean(self):
        assert compute_welfare(SPREAD, "yaari")["value"] == pytest.approx(1.0)

    def test_rdeu(self):
        utility = {"knots": [[0, 0], [1, 1]]}
        assert compute_welfare(COIN, "rdeu", utility=utility)["value"] == pytest.approx(0.5)

    def test_rdeu_without_utility(self):
        with pytest.raises(ValueError, match="Welfare computation failed"):
            compute_welfare(COIN, "rdeu")

    def test_unknown(self):
        with pytest.raises(ValueError):
            compute_welfare(COIN, "atkinson")


def test_lorenz_table():
    assert lorenz_table(COIN, n_points=2) == [[0.0, 0.0], [0.5, 0.0], [1.0, 0.5]]


class TestMajorization:
    def test_weak_upper(self):
        result = check_majorization([3, 2], [3, 1], kind="weak_upper")
        assert result == {"kind": "weak_upper", "holds": False, "witness": 1, "margin": -1.0}

    def test_statements(self):
        result = check_majorization([1, 0, 0], [0.5, 0.5, 0], statements=True)
        assert result["holds"] is True
        assert all(s["holds"] for s in result["statements"].values())

    def test_mismatch(self):
        with pytest.raises(ValueError, match="Majorization check failed"):
            check_majorization([1, 2], [1])


class TestVerify:
    def test_exhaustive(self):
        report = verify_theorem("MAJ", exhaustive=True, n=2, grid=[0.0, 1.0])
        assert report["trials"] == 16
        assert report["agreements"] == 16

    def test_unknown(self):
        with pytest.raises(ValueError, match="Verification failed"):
            verify_theorem("T9")
