import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from steerlab import linalg as la
from steerlab.correlations import (
    BB84_RELABELING,
    SWAP_CHARLIE,
    CorrelationTable,
    Relabeling,
    all_relabelings,
    bb84_settings,
    born_table,
    chsh_settings,
    family_table,
    find_relabelings,
    ghz_canonical_settings,
    uniform_table,
    validate_table,
)
from steerlab.errors import DimensionError, DomainError
from steerlab.inequalities import builtin, evaluate
from steerlab.measurements import from_observable, noisy, projective
from steerlab.states import make_state, maximally_mixed, random_state

SQ2 = np.sqrt(2)
X, Y, Z = np.eye(3)


def _born_loops(rho, obs):
    """Oracle: correlators straight from observables, <A (x) B (x) C>."""
    n = len(obs)
    out = np.zeros((2,) * n)
    for xs in itertools.product((0, 1), repeat=n):
        op = obs[0][xs[0]]
        for k in range(1, n):
            op = np.kron(op, obs[k][xs[k]])
        out[xs] = np.trace(rho @ op).real
    return out


def test_chsh_family_entry():
    assert family_table("chsh", 1).prob((1, 1), (0, 0)) == pytest.approx((2 + SQ2) / 8)
    assert (2 + SQ2) / 8 == pytest.approx(0.42678, abs=1e-5)


def test_bb84_zero_uniform():
    # each conditional distribution is uniform over 4 outcome pairs
    t = family_table("bb84", 0)
    assert t.probs.size == 16
    assert np.allclose(t.probs, 0.25)


def test_svetlichny_correlators():
    corr = family_table("svetlichny", 1).correlators()
    assert np.allclose(np.abs(corr), SQ2 / 2)


@pytest.mark.parametrize("v", [0.0, 0.3, 1.0])
def test_bb84_correlators(v):
    t = family_table("bb84", v)
    assert t.correlator((0, 0)) == pytest.approx(v)
    assert t.correlator((1, 1)) == pytest.approx(v)
    assert t.correlator((0, 1)) == pytest.approx(0)


def test_uniform_correlator_zero():
    assert uniform_table(2).correlator((1, 0)) == 0
    assert np.all(uniform_table(3).correlators() == 0)


@pytest.mark.parametrize("fid", ["chsh", "bb84", "svetlichny", "ghz", "ghz-literal", "ghz-canonical"])
@pytest.mark.parametrize("v", [0.0, 0.5, 1.0])
def test_families_valid(fid, v):
    rep = validate_table(family_table(fid, v))
    assert rep.ok(1e-12) and rep.min_prob >= -1e-15


def test_signaling_table_detected():
    p = np.zeros((2, 2, 2, 2))
    # Bob's outcome copies Alice's setting: signaling from A to B
    for x, y in itertools.product((0, 1), repeat=2):
        p[x, y, 0, x] = 1.0
    rep = validate_table(CorrelationTable(p))
    assert rep.normalization == 0.0
    assert rep.no_signaling == pytest.approx(1.0)


def test_family_domain():
    with pytest.raises(DomainError):
        family_table("chsh", 1.1)
    with pytest.raises(DomainError):
        family_table("nope", 0.5)


def test_born_singlet_example1_is_chsh_family():
    t = born_table(make_state("singlet"), chsh_settings())
    assert np.max(np.abs(t.probs - family_table("chsh", 1).probs)) <= 1e-12


def test_born_maximally_mixed_uniform():
    t = born_table(maximally_mixed(3), [[projective(X), projective(Z)]] * 3)
    assert np.allclose(t.probs, 1 / 8)


def test_born_dimension_mismatch():
    with pytest.raises(DimensionError):
        born_table(make_state("ghz"), chsh_settings())


@pytest.mark.parametrize("v", np.round(np.arange(0, 1.0001, 0.1), 10))
def test_chsh_family_from_werner(v):
    t = born_table(make_state("werner", v), chsh_settings())
    assert np.max(np.abs(t.probs - family_table("chsh", v).probs)) <= 1e-12


@pytest.mark.parametrize("v", np.round(np.arange(0, 1.0001, 0.1), 10))
def test_bb84_family_from_werner_after_relabeling(v):
    raw = born_table(make_state("werner", v), bb84_settings())
    t = BB84_RELABELING.apply(raw)
    assert np.max(np.abs(t.probs - family_table("bb84", v).probs)) <= 1e-12


def test_born_matches_observable_oracle(rng):
    for _ in range(20):
        rho = random_state(rng, 3)
        dirs = [[v / np.linalg.norm(v) for v in rng.normal(size=(2, 3))] for _ in range(3)]
        settings_ = [[projective(d) for d in party] for party in dirs]
        obs = [[la.bloch_operator(d) for d in party] for party in dirs]
        t = born_table(rho, settings_)
        assert np.allclose(t.correlators(), _born_loops(rho.matrix, obs), atol=1e-12)


def test_born_tables_satisfy_no_signaling(rng):
    for n in (2, 3):
        for _ in range(30):
            rho = random_state(rng, n)
            settings_ = [[noisy(v / np.linalg.norm(v), rng.uniform()) for v in rng.normal(size=(2, 3))]
                         for _ in range(n)]
            assert validate_table(born_table(rho, settings_)).ok(1e-12)


def test_ghz_canonical_closed_form():
    """Canonical GHZ correlators: V on x^y^z = 1 with -V at (1,1,1), 0 elsewhere."""
    v = 0.8
    corr = family_table("ghz-canonical", v).correlators()
    for x, y, z in itertools.product((0, 1), repeat=3):
        expected = 0.0 if (x ^ y ^ z) == 0 else (-v if (x, y, z) == (1, 1, 1) else v)
        assert corr[x, y, z] == pytest.approx(expected, abs=1e-14)


def test_ghz_literal_differs_from_canonical_only_by_sign_at_111():
    lit = family_table("ghz-literal", 1).correlators()
    can = family_table("ghz-canonical", 1).correlators()
    diff = np.argwhere(np.abs(lit - can) > 1e-12)
    assert [tuple(d) for d in diff] == [(1, 1, 1)]


# Relabelings --------------------------------------------------------------


def _ex_listed_settings(sharp_b_diag=True):
    sx, sy = la.SIGMA_X, la.SIGMA_Y
    a = [from_observable(sx), from_observable(sy)]
    b = [from_observable((sx - sy) / SQ2), from_observable((sx + sy) / SQ2)] if sharp_b_diag else a
    c = [from_observable(sx), from_observable(-sy)]
    return [a, b, c]


def test_ex1_listed_settings_need_charlie_swap():
    """Brute force: among relabelings touching one party only, swapping C's settings is the unique fix."""
    raw = born_table(make_state("ghz"), _ex_listed_settings())
    target = family_table("svetlichny", 1)
    assert np.max(np.abs(raw.probs - target.probs)) > 0.1
    single_party = [g for k in range(3) for g in find_relabelings(raw, target, parties=[k])]
    assert single_party == [SWAP_CHARLIE]
    # no global sign flip of a single party's outcomes does it
    for k in range(3):
        flips = tuple((True, True) if j == k else (False, False) for j in range(3))
        g = Relabeling((False,) * 3, flips)
        assert np.max(np.abs(g.apply(raw).probs - target.probs)) > 0.1


def test_ex2_listed_settings_give_zero_mermin():
    raw = born_table(make_state("ghz"), _ex_listed_settings(sharp_b_diag=False))
    assert evaluate(builtin("mermin"), raw)[0] == pytest.approx(0, abs=1e-14)
    assert evaluate(builtin("mermin"), family_table("ghz-literal", 1))[0] == pytest.approx(2)


def test_ex2_charlie_relabeling_search():
    """Brute force over the 8 swap/sign relabelings of C; the Mermin maximizer is unique."""
    raw = born_table(make_state("ghz"), _ex_listed_settings(sharp_b_diag=False))
    mermin = builtin("mermin")
    scores = [(evaluate(mermin, g.apply(raw))[0], g) for g in all_relabelings(3, parties=[2])]
    assert len(scores) == 8
    best = max(s for s, _ in scores)
    winners = [g for s, g in scores if abs(s - best) < 1e-12]
    assert best == pytest.approx(4)
    assert winners == [SWAP_CHARLIE]
    # and the canonical settings are exactly that relabeling
    canon = born_table(make_state("ghz"), ghz_canonical_settings())
    assert np.allclose(SWAP_CHARLIE.apply(raw).probs, canon.probs, atol=1e-14)


def test_relabeling_identity_and_involution(rng):
    t = born_table(random_state(rng, 2), chsh_settings())
    assert np.array_equal(Relabeling.identity(2).apply(t).probs, t.probs)
    g = Relabeling((True, False), ((True, False), (False, True)))
    back = g.apply(g.apply(t))
    # a swap composed with itself undoes the swap but flips move with it
    assert validate_table(back).ok()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**31 - 1), st.sampled_from(list(all_relabelings(2))))
def test_relabeling_preserves_validity(seed, g):
    rng = np.random.default_rng(seed)
    rho = random_state(rng, 2)
    settings_ = [[noisy(v / np.linalg.norm(v), 0.9) for v in rng.normal(size=(2, 3))] for _ in range(2)]
    t = g.apply(born_table(rho, settings_))
    assert validate_table(t).ok(1e-12)


def test_relabelings_form_group():
    gs = list(all_relabelings(2))
    assert len(gs) == 64
    t = family_table("chsh", 0.9)
    tables = {np.round(g.apply(t).probs, 12).tobytes() for g in gs}
    # closure: applying any relabeling to any member stays in the orbit
    h = gs[37]
    for g in gs[::7]:
        assert np.round(h.apply(g.apply(t)).probs, 12).tobytes() in tables


def test_records_roundtrip():
    t = family_table("svetlichny", 0.4)
    recs = list(t.records())
    assert len(recs) == 64
    for r in recs:
        assert t.prob(r["outcomes"], r["settings"]) == r["p"]
