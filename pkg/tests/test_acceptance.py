"""Acceptance criteria 1-11, each printing one PASS/FAIL line with its runtime."""

import json
import time
from contextlib import contextmanager
from itertools import product

import pytest

from conftest import ALGEBRAS, INSTANCES, instance_data, sigma_for
from oracles import oracle_istar
from hopf_algebroid.bialgebroid import (
    PASS,
    Antipode,
    Verifier,
    antipode_ideal_suite,
    coproduct_ideal_suite,
    epsilon_kills_suite,
    hopf_suite,
    rigid_identities_suite,
    run_suites,
)
from hopf_algebroid.cli import main
from hopf_algebroid.freealg import FreeAlgebra
from hopf_algebroid.membership import MembershipCertificate, MembershipSolver, replay
from hopf_algebroid.quasigroup import builtin_qg5, validate_latin, validate_ternary
from hopf_algebroid.rigidity import q_matrices, solve_condition, solve_istar
from hopf_algebroid.sigma import check_left_rhoT, check_remark_equivalence, check_right_rhoT, check_tt
from hopf_algebroid.tensor import TensorCertificate, replay_tensor

QG5_TABLE = [
    [4, 3, 2, 1, 0],
    [3, 1, 0, 2, 4],
    [0, 2, 3, 4, 1],
    [1, 0, 4, 3, 2],
    [2, 4, 1, 0, 3],
]


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def run(number: int, title: str, limit: float | None = None):
        start = time.perf_counter()
        notes: list[str] = []
        ok = False
        try:
            yield notes
            elapsed = time.perf_counter() - start
            if limit is not None:
                assert elapsed < limit, f"runtime {elapsed:.1f} s exceeds {limit} s"
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}  ({elapsed:.2f} s)"
            if notes:
                line += "  " + "; ".join(notes)
            with capsys.disabled():
                print("\n" + line)

    return run


def fresh_verifier(name="ab2", R="base", bound=4):
    return Verifier(sigma_for(name, R), bound)


def test_criterion_01_qg5_fidelity(criterion):
    with criterion(1, "QG5 table, Latin property, quoted products", 1.0):
        q = builtin_qg5()
        assert [list(r) for r in q.table] == QG5_TABLE
        assert validate_latin(q) is None
        assert q.multiply(0, 2) == 2
        assert q.multiply(q.multiply(1, 2), 3) == 1
        assert q.multiply(1, q.multiply(2, 3)) == 4


def test_criterion_02_ternary_axioms(criterion):
    with criterion(2, "QG1-QG5 exhaustive on Z/2, Z/3, Z/5 and the QG5 companion", 5.0):
        for name in INSTANCES:
            q, m, pi = instance_data(name)
            assert validate_ternary(m, first_only=False) == [], name
            assert sorted(pi.map) == list(range(q.n))


def test_criterion_03_sigma_conditions(criterion):
    with criterion(3, "sigma conditions and implication verdict, R in {Q, Q[x]/(x^2)}", 10.0) as notes:
        for name, R in product(INSTANCES, ALGEBRAS):
            s = sigma_for.__wrapped__(name, R)
            assert check_right_rhoT(s) is None, (name, R)
            assert check_left_rhoT(s) is None, (name, R)
            assert check_tt(s) is None, (name, R)
            assert check_remark_equivalence(s).to_json()["verdict"] == "consistent"
        notes.append(f"{len(INSTANCES) * len(ALGEBRAS)} instances")


def test_criterion_04_rigidity(criterion):
    with criterion(4, "rigidity conditions (1)-(5); abelian i_* is the flip and Q = delta", 10.0):
        for name in INSTANCES:
            s = sigma_for.__wrapped__(name, "base")
            istar = solve_istar(s.tilde)
            mats = q_matrices(istar, s)
            for c in range(2, 6):
                solve_condition(mats, c, s.L, s.n)
            L, n = s.L, s.n
            if name.startswith("ab"):
                oracle = oracle_istar(s)
                for a, b, c, d in product(range(n), repeat=4):
                    flip = L.one if (c == b and d == a) else L.zero
                    assert istar[(a, b, c, d)] == flip
                    assert [tuple(flip.at(p)) for p in range(n)] == oracle[(a, b, c, d)]
                for M in mats:
                    assert all(M[(a, b)] == (L.one if a == b else L.zero) for a, b in product(range(n), repeat=2))


def test_criterion_05_antipode_identities(criterion):
    with criterion(5, "rigid identities at D = 4, abelian n = 2 over Q", 120.0) as notes:
        v = fresh_verifier()
        entries = rigid_identities_suite(v)
        bad = [e.id for e in entries if e.status != PASS]
        assert not bad, bad
        for e in entries:
            assert replay(e.certificate, v.rels).ok, e.id
        assert any(e.id.startswith("rigid-identities/x-variants") for e in entries)
        notes.append(f"{len(entries)} identities certified, all certificates replay")


def test_criterion_06_epsilon_kills(criterion):
    with criterion(6, "epsilon-bar and epsilon-bar' kill every generator", 10.0):
        for name in INSTANCES:
            v = fresh_verifier(name)
            entries = epsilon_kills_suite(v)
            assert {e.status for e in entries} == {PASS}, [(e.id, e.witness) for e in entries if e.status != PASS]


def test_criterion_07_coproduct_ideal(criterion):
    with criterion(7, "Delta(g) in I_sigma (x) A + A (x) I_sigma + I_2 at D = 4; Li chain", 300.0) as notes:
        v = fresh_verifier()
        entries = coproduct_ideal_suite(v, sides=("right",))
        bad = [e.id for e in entries if e.status != PASS]
        assert not bad, bad
        assert {e.id for e in entries} >= {"coproduct-ideal/chain-Li", "coproduct-ideal/chain-L"}
        certs = [e.certificate for e in entries if e.certificate is not None]
        assert len(certs) == len(v.rels)
        for c in certs:
            back = TensorCertificate.from_json(v.rels, json.loads(json.dumps(c.to_json())))
            assert replay_tensor(back, v.rels).ok
        notes.append(f"{len(certs)} generators certified")


def test_criterion_08_antipode_ideal(criterion):
    with criterion(8, "S-bar(g) in I_sigma at D = 4 for every generator", 300.0) as notes:
        v = fresh_verifier()
        entries = antipode_ideal_suite(v)
        bad = [e.id for e in entries if e.status != PASS]
        passed = len(entries) - len(bad)
        notes.append(f"{passed}/{len(entries)} certified")
        if bad:
            notes.append(f"not found at D = 4: {', '.join(bad)}")
        assert not bad


def test_criterion_09_hopf(criterion):
    with criterion(9, "S o t = s exact; antipode equation for every letter at D = 4", 120.0) as notes:
        v = fresh_verifier()
        entries = hopf_suite(v, random_words=0)
        status = {e.id: e.status for e in entries}
        assert status["hopf/antipode-target"] == PASS
        assert status["hopf/antipode-antimultiplicative"] == PASS
        letters = [f"hopf/antipode-equation/{name}" for name, _ in v.letters()]
        bad = [cid for cid in letters if status[cid] != PASS]
        assert not bad, bad
        # the letter cases close through R2b and the Q-inverse respectively
        S = Antipode(v.alg, v.rigidity.x)
        for a, b in product(range(2), repeat=2):
            assert v.counit.pi(S(v.alg.letter("Li", a, b))) == (v.alg.L.one if a == b else v.alg.L.zero)
        notes.append(f"{len(letters)} letters")


def test_criterion_10_non_weak_hopf(criterion, tmp_path, capsys):
    with criterion(10, "radical dimension and the non-weak-Hopf annotation", 1.0):
        cfg = tmp_path / "c.json"
        results = {}
        for R in ("dual", "base"):
            cfg.write_text(json.dumps({"quasigroup": {"kind": "abelian", "n": 2}, "algebra_r": R}))
            assert main(["check-sigma", str(cfg), "--format", "json"]) == 0
            results[R] = json.loads(capsys.readouterr().out)
        assert results["dual"]["radical_dim"] == 1
        assert any("is not a weak Hopf algebra" in a for a in results["dual"]["annotations"])
        assert results["base"]["radical_dim"] == 0 and results["base"]["annotations"] == []


def test_criterion_11_soundness(criterion, tmp_path):
    with criterion(11, "unit never a member (D <= 5); certificates replay; thread determinism") as notes:
        sigma = sigma_for("ab2")
        alg = FreeAlgebra(sigma.L, sigma.deg)
        v = fresh_verifier()
        for D in range(0, 6):
            assert not MembershipSolver(v.rels, D).check(alg.unit).member
            assert not v.counit.epsilon(v.alg.unit).is_zero()
        report = run_suites(v)
        replayed = 0
        for e in report.entries:
            if e.status != PASS or e.certificate is None:
                continue
            for c in e.certificate if isinstance(e.certificate, list) else [e.certificate]:
                if isinstance(c, MembershipCertificate):
                    assert replay(c, v.rels).ok, e.id
                else:
                    assert replay_tensor(c, v.rels).ok, e.id
                replayed += 1
        notes.append(f"{replayed} certificates replayed")
        cfg = tmp_path / "c.json"
        cfg.write_text(json.dumps({"quasigroup": {"kind": "abelian", "n": 2}}))
        reports = []
        for threads in ("1", "4"):
            out = tmp_path / f"t{threads}"
            main(["verify", str(cfg), "--threads", threads, "--output-dir", str(out)])
            reports.append((out / "report.json").read_bytes())
        assert reports[0] == reports[1]
