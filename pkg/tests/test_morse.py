from __future__ import annotations

import pytest

from morsetilings import graphs as G
from morsetilings.complexes import (
    ComplexError,
    aux_graph_xn,
    complex_from_facets,
    independence_complex,
    mask_of,
    perfect_matching_complex,
)
from morsetilings.homology import homology_consistent_with, reduced_betti
from morsetilings.morse import (
    CriticalCells,
    FoldError,
    PairingSchedule,
    PartialPairing,
    ScheduleError,
    alternating_face_sum,
    element_pairing_sequence,
    even_tiling_schedule,
    fold_reduce,
    fold_sequence_grid,
    grid_schedule,
    infer_homotopy_type,
    morse_euler_check,
    odd_simple_schedule,
    run_schedule,
    verify_acyclic,
    verify_partial_pairing,
)

from oracles import hasse_pairing_acyclic


def pm(g):
    return perfect_matching_complex(g)


def test_schedule_parsing():
    s = PairingSchedule.parse("a_1, b_{1,1},c_{4,1}")
    assert s.elements == ("a_1", "b_{1,1}", "c_{4,1}")
    with pytest.raises(ScheduleError):
        PairingSchedule.parse("a_1,a_1")


def test_grid5_odd_schedule_no_critical():
    run = run_schedule(pm(G.grid_2xn(5)), ["a_1", "a_3", "a_5"])
    assert run.critical.total == 0
    assert run.homotopy.kind == "contractible" and run.homotopy.evidence == "zero-critical-cells"


def test_grid4_even_schedule_one_critical():
    c = pm(G.grid_2xn(4))
    run = run_schedule(c, ["a_1", "b_1", "a_3", "b_3"])
    assert run.critical.counts == {1: 1}
    assert [c.face_labels(f) for f in run.critical.faces()] == [["b_1", "b_3"]]
    assert run.homotopy.describe() == "S^1"


def test_even_tiling_schedule():
    assert even_tiling_schedule(3).elements == ("a_1", "b_{1,1}", "c_{2,2}")
    assert even_tiling_schedule(4).elements == ("a_1", "b_{1,1}", "c_{2,2}")
    assert even_tiling_schedule(5).elements == ("a_1", "b_{1,1}", "c_{2,4}")
    run = run_schedule(pm(G.even_tiling(3, 2)), even_tiling_schedule(3))
    assert run.critical.total == 0 and run.acyclic


def test_odd_simple_schedule_labels():
    assert odd_simple_schedule(2).elements == ("a_1", "b_{1,1}", "c_{4,1}")
    assert odd_simple_schedule(3).elements == ("a_1", "b_{1,1}", "c_{4,2}")


def test_unknown_schedule_label():
    with pytest.raises(ScheduleError):
        element_pairing_sequence(pm(G.grid_2xn(3)), ["z_1"])


def test_void_complex_rejected():
    with pytest.raises(ComplexError):
        element_pairing_sequence(pm(G.path(3)), ["e_1"])


def test_legality_checks():
    c = pm(G.grid_2xn(4))
    p, _ = element_pairing_sequence(c, grid_schedule(4))
    assert verify_partial_pairing(p)
    twice = PartialPairing([(0, 0b1), (0, 0b10)])
    assert not verify_partial_pairing(twice)
    jump = PartialPairing([(0, 0b11)])
    assert not verify_partial_pairing(jump)
    with pytest.raises(ValueError):
        verify_acyclic(jump)


def test_grid6_schedule_pairing_acyclic():
    c = pm(G.grid_2xn(6))
    p, _ = element_pairing_sequence(c, grid_schedule(6))
    assert verify_acyclic(p)
    assert hasse_pairing_acyclic(c.faces, p.pairs)


def test_cyclic_triangle_pairing_detected():
    hollow = complex_from_facets(["1", "2", "3"], [[0, 1], [1, 2], [0, 2]])
    pairs = [(mask_of([i]), mask_of([i, (i + 1) % 3])) for i in range(3)]
    p = PartialPairing(pairs, hollow)
    assert verify_partial_pairing(p)
    assert not verify_acyclic(p)
    assert not hasse_pairing_acyclic(hollow.faces, pairs)


def test_empty_pairing_acyclic():
    assert verify_acyclic(PartialPairing([]))


@pytest.mark.parametrize(
    "make,schedule",
    [
        (lambda n=n: G.grid_2xn(n), grid_schedule(n)) for n in range(2, 8)
    ]
    + [
        (lambda: G.even_tiling(3, 2), even_tiling_schedule(3)),
        (lambda: G.even_tiling(4, 2), even_tiling_schedule(4)),
        (lambda: G.odd_tiling_simple(2, 2), odd_simple_schedule(2)),
        (lambda: G.cycle(6), PairingSchedule(("a", "b", "c"))),
        (lambda: G.triangle_tiling(3), PairingSchedule(("a_1", "c_{2,1}", "b_{3,1}"))),
    ],
)
def test_acyclicity_matches_hasse_oracle(make, schedule):
    c = pm(make())
    run = run_schedule(c, schedule)
    assert bool(run.acyclic) == hasse_pairing_acyclic(c.faces, run.pairing.pairs)
    assert run.euler_ok


def test_homotopy_inference():
    none = CriticalCells()
    assert infer_homotopy_type(none, True).kind == "contractible"
    one = CriticalCells.from_faces([0b111])
    h = infer_homotopy_type(one, True)
    assert (h.kind, h.dim, h.count) == ("wedge", 2, 1)
    two = CriticalCells.from_faces([0b1, 0b110])
    assert infer_homotopy_type(two, True).kind == "undetermined"
    assert infer_homotopy_type(CriticalCells.from_faces([0]), False).kind == "undetermined"


def test_euler_sums():
    c = pm(G.grid_2xn(4))
    run = run_schedule(c, grid_schedule(4))
    assert alternating_face_sum(c.faces) == alternating_face_sum(run.critical.faces()) == -1
    assert morse_euler_check(c, run.critical, True)
    contractible = run_schedule(pm(G.grid_2xn(5)), grid_schedule(5))
    assert alternating_face_sum(contractible.complex.faces) == 0
    # a census that disagrees with the faces is caught
    assert not morse_euler_check(c, CriticalCells(), True)


@pytest.mark.parametrize("n", range(2, 11))
def test_single_critical_sign(n):
    run = run_schedule(pm(G.grid_2xn(n)), grid_schedule(n))
    want = 0 if n % 2 else (-1) ** (n // 2 - 1)
    assert alternating_face_sum(run.complex.faces) == want


# --- folds -------------------------------------------------------------------


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_first_two_folds(n):
    x = aux_graph_xn(n)
    y = fold_reduce(x, f"a_{n}", f"b_{n - 2}")
    fold_reduce(y, f"a_{n}", f"c_{n - 2}")


def test_adjacent_fold_rejected():
    x = aux_graph_xn(4)
    with pytest.raises(FoldError):
        fold_reduce(x, "a_4", "b_3")


def test_fold_reports_offending_neighbors():
    x = aux_graph_xn(5)
    with pytest.raises(FoldError) as err:
        fold_reduce(x, "a_5", "a_1")
    assert err.value.offending


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_fold_sequence_certified(n):
    g, log = fold_sequence_grid(n)
    assert [s.delete for s in log] == [f"b_{n - 2}", f"c_{n - 2}", f"a_{n - 1}"]
    assert g.vertex_count == 3 * (n - 2) - 2 + 3
    before = reduced_betti(independence_complex(aux_graph_xn(n))).nonzero()
    assert reduced_betti(independence_complex(g)).nonzero() == before


def test_fold_sequence_needs_three():
    with pytest.raises(FoldError):
        fold_sequence_grid(2)


def test_morse_agrees_with_homology():
    for n in range(2, 9):
        c = pm(G.grid_2xn(n))
        run = run_schedule(c, grid_schedule(n))
        assert homology_consistent_with(reduced_betti(c), run.homotopy)


def test_report_layout():
    c = pm(G.grid_2xn(6))
    report = run_schedule(c, grid_schedule(6)).report()
    assert report["critical"] == [{"dim": 2, "faces": [["b_1", "b_3", "b_5"]]}]
    assert report["empty_paired"] and report["acyclic"]
