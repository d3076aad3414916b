"""Verification jobs: one per result under test, each a list of per-instance checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator

from . import graphs as G
from .complexes import (
    FaceCapExceeded,
    SimplicialComplex,
    complex_difference,
    independence_complex,
    aux_graph_xn,
    perfect_matching_complex,
)
from .homology import BettiReport, homology_consistent_with, reduced_betti
from .matchings import (
    check_attach_edge_exclusion,
    check_lemma2,
    enumerate_bad_matchings,
    grid_bad_matchings_closed_form,
)
from .morse import (
    HomotopyTypeReport,
    PairingSchedule,
    even_tiling_schedule,
    fold_reduce,
    grid_schedule,
    odd_simple_schedule,
    run_schedule,
    FoldError,
    fold_sequence_grid,
)

PASS, FAIL, SKIP, INFO = "PASS", "FAIL", "SKIP", "INFO"

DEFAULT_CAPS = {
    "grid_n_max": 10,
    "even_n_max": 5,
    "even_k_max": 3,
    "odd_n_max": 3,
    "odd_k_max": 2,
    "triangle_k_max": 5,
    "sweep_max": 4,
    "cap_faces": 2_000_000,
}


@dataclass
class InstanceResult:
    job: str
    instance: str
    status: str
    predicted: str = ""
    computed: str = ""
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        text = f"{self.status} {self.job} {self.instance}"
        if self.predicted:
            text += f": predicted {self.predicted}; computed {self.computed}"
        elif self.computed:
            text += f": {self.computed}"
        if self.status == SKIP and "reason" in self.details:
            text += f" ({self.details['reason']})"
        if self.details.get("discrepancy"):
            text += " [schedule discrepancy]"
        return text

    def to_dict(self) -> dict:
        return {
            "job": self.job,
            "instance": self.instance,
            "status": self.status,
            "predicted": self.predicted,
            "computed": self.computed,
            "details": self.details,
        }


def grid_prediction(n: int) -> HomotopyTypeReport:
    """Contractible for odd n, S^k for n = 2k + 2."""
    if n % 2:
        return HomotopyTypeReport("contractible")
    return HomotopyTypeReport("wedge", dim=(n - 2) // 2, count=1)


def family_prediction(g: G.Graph) -> HomotopyTypeReport | None:
    if g.family == "grid2":
        return grid_prediction(g.params[0])
    if g.family in ("even-tiling", "odd-simple", "odd-alternate"):
        return HomotopyTypeReport("contractible")
    if g.family == "triangles":
        return grid_prediction(g.params[0] + 1)
    return None


def family_schedule(g: G.Graph) -> PairingSchedule | None:
    if g.family == "grid2":
        return grid_schedule(g.params[0])
    if g.family == "even-tiling":
        return even_tiling_schedule(g.params[0])
    if g.family == "odd-simple":
        return odd_simple_schedule(g.params[0])
    return None


def describe_betti(r: BettiReport) -> str:
    if r.void:
        return "void"
    tors = "torsion-free" if r.torsion_free else f"torsion {r.torsion}"
    return f"betti {r.reduced_betti} {tors}"


def _census(run) -> str:
    counts = run.critical.counts
    if not counts:
        return "no critical cells"
    return "critical " + ", ".join(f"dim {d}: {c}" for d, c in counts.items())


def _complex(g: G.Graph, caps: dict) -> SimplicialComplex:
    return perfect_matching_complex(g, cap=caps["cap_faces"])


def _guard(job: str, instance: str, fn: Callable[[], InstanceResult]) -> InstanceResult:
    try:
        return fn()
    except FaceCapExceeded as exc:
        return InstanceResult(job, instance, SKIP, details={"reason": str(exc)})


def _over_cap(job: str, instance: str, what: str) -> InstanceResult:
    return InstanceResult(job, instance, SKIP, details={"reason": f"{what} exceeds configured cap"})


# --- jobs ---------------------------------------------------------------------


def job_thm_grid(caps: dict, n_max: int = 10, n_min: int = 2) -> Iterator[InstanceResult]:
    for n in range(n_min, n_max + 1):
        inst = f"n={n}"
        if n > caps["grid_n_max"]:
            yield _over_cap("thm-grid", inst, f"n={n}")
            continue

        def one(n=n, inst=inst):
            r = reduced_betti(_complex(G.grid_2xn(n), caps))
            want = grid_prediction(n)
            ok = homology_consistent_with(r, want)
            return InstanceResult("thm-grid", inst, PASS if ok else FAIL, want.describe(), describe_betti(r), r.to_dict())

        yield _guard("thm-grid", inst, one)


def job_grid_schedules(caps: dict, n_max: int = 10, n_min: int = 2) -> Iterator[InstanceResult]:
    for n in range(n_min, n_max + 1):
        inst = f"n={n}"
        if n > caps["grid_n_max"]:
            yield _over_cap("grid-schedules", inst, f"n={n}")
            continue

        def one(n=n, inst=inst):
            c = _complex(G.grid_2xn(n), caps)
            run = run_schedule(c, grid_schedule(n))
            want = grid_prediction(n)
            crit = [c.face_labels(f) for f in run.critical.faces()]
            if n % 2:
                census_ok = not crit
            else:
                census_ok = crit == [sorted(f"b_{i}" for i in range(1, n, 2))]
            ok = (
                census_ok
                and run.empty_paired
                and bool(run.legal)
                and bool(run.acyclic)
                and run.euler_ok
                and run.homotopy.kind == want.kind
                and run.homotopy.dim == want.dim
                and run.homotopy.count == want.count
            )
            details = run.report()
            details["euler_ok"] = run.euler_ok
            return InstanceResult("grid-schedules", inst, PASS if ok else FAIL, want.describe(), f"{run.homotopy.describe()} ({_census(run)})", details)

        yield _guard("grid-schedules", inst, one)


def job_thm_even(caps: dict, n_max: int = 5, k_max: int = 3, n_min: int = 3, k_min: int = 2) -> Iterator[InstanceResult]:
    for n in range(n_min, n_max + 1):
        for k in range(k_min, k_max + 1):
            inst = f"n={n},k={k}"
            if n > caps["even_n_max"] or k > caps["even_k_max"]:
                yield _over_cap("thm-even", inst, inst)
                continue

            def one(n=n, k=k, inst=inst):
                c = _complex(G.even_tiling(n, k), caps)
                run = run_schedule(c, even_tiling_schedule(n))
                r = reduced_betti(c)
                ok = (
                    run.critical.total == 0
                    and bool(run.acyclic)
                    and run.euler_ok
                    and homology_consistent_with(r, HomotopyTypeReport("contractible"))
                )
                details = {"morse": run.report(), "homology": r.to_dict()}
                return InstanceResult("thm-even", inst, PASS if ok else FAIL, "contractible", f"{_census(run)}; {describe_betti(r)}", details)

            yield _guard("thm-even", inst, one)


def job_thm_odd_alternate(caps: dict, n_max: int = 3, k_max: int = 2, n_min: int = 2, k_min: int = 2) -> Iterator[InstanceResult]:
    for n in range(n_min, n_max + 1):
        for k in range(k_min, k_max + 1):
            inst = f"n={n},k={k}"
            if n > caps["odd_n_max"] or k > caps["odd_k_max"]:
                yield _over_cap("thm-odd-alternate", inst, inst)
                continue

            def one(n=n, k=k, inst=inst):
                g = G.odd_tiling_alternate(n, k)
                c = _complex(g, caps)
                r = reduced_betti(c)
                # the complex equals the even tiling's once the unused a_{2i} are dropped
                evens = G.attaching_edges(g, "even")
                reduced = G.delete_edges(g, evens)
                target = G.even_tiling(2 * n, k)
                emap = G.alternate_to_even_edge_map(n, k)
                G.induced_vertex_map(reduced, target, emap)
                same = complex_difference(_complex(reduced, caps), _complex(target, caps), emap) is None
                ok = same and homology_consistent_with(r, HomotopyTypeReport("contractible"))
                details = {"homology": r.to_dict(), "equals_even_tiling_complex": same}
                return InstanceResult("thm-odd-alternate", inst, PASS if ok else FAIL, "contractible", describe_betti(r), details)

            yield _guard("thm-odd-alternate", inst, one)


def job_thm_triangles(caps: dict, k_max: int = 5, k_min: int = 2) -> Iterator[InstanceResult]:
    for k in range(k_min, k_max + 1):
        inst = f"k={k}"
        if k > caps["triangle_k_max"]:
            yield _over_cap("thm-triangles", inst, inst)
            continue

        def one(k=k, inst=inst):
            g = G.triangle_tiling(k)
            c = _complex(g, caps)
            r = reduced_betti(c)
            want = grid_prediction(k + 1)
            reduced = G.delete_edges(g, G.attaching_edges(g, "even"))
            emap = G.triangle_to_grid_edge_map(k)
            G.induced_vertex_map(reduced, G.grid_2xn(k + 1), emap)
            same = complex_difference(_complex(reduced, caps), _complex(G.grid_2xn(k + 1), caps), emap) is None
            ok = same and homology_consistent_with(r, want)
            details = {"homology": r.to_dict(), "equals_grid_complex": same}
            return InstanceResult("thm-triangles", inst, PASS if ok else FAIL, want.describe(), describe_betti(r), details)

        yield _guard("thm-triangles", inst, one)


def job_thm_odd_simple(caps: dict, n_max: int = 3, k_max: int = 2, n_min: int = 2, k_min: int = 2) -> Iterator[InstanceResult]:
    for n in range(n_min, n_max + 1):
        for k in range(k_min, k_max + 1):
            inst = f"n={n},k={k}"
            if n > caps["odd_n_max"] or k > caps["odd_k_max"]:
                yield _over_cap("thm-odd-simple", inst, inst)
                continue

            def one(n=n, k=k, inst=inst):
                c = _complex(G.odd_tiling_simple(n, k), caps)
                r = reduced_betti(c)
                run = run_schedule(c, odd_simple_schedule(n))
                ok = homology_consistent_with(r, HomotopyTypeReport("contractible"))
                details = {"homology": r.to_dict(), "morse": run.report(), "discrepancy": run.critical.total > 0}
                return InstanceResult("thm-odd-simple", inst, PASS if ok else FAIL, "contractible", f"{describe_betti(r)}; schedule leaves {_census(run)}", details)

            yield _guard("thm-odd-simple", inst, one)


def job_lemma_bad(caps: dict, n_max: int = 8, n_min: int = 2) -> Iterator[InstanceResult]:
    for n in range(n_min, n_max + 1):
        inst = f"n={n}"
        if n > caps["grid_n_max"]:
            yield _over_cap("lemma-bad", inst, inst)
            continue
        brute = {tuple(m.labels()) for m in enumerate_bad_matchings(G.grid_2xn(n))}
        closed = {tuple(m.labels()) for m in grid_bad_matchings_closed_form(n)}
        ok = brute == closed and len(brute) == 2 * max(n - 2, 0)
        yield InstanceResult(
            "lemma-bad", inst, PASS if ok else FAIL, f"{2 * max(n - 2, 0)} sets {{b_i,c_{{i+1}}}} and {{c_i,b_{{i+1}}}}", f"{len(brute)} bad matchings",
            {"brute_force": sorted(map(list, brute)), "closed_form": sorted(map(list, closed))},
        )


def job_lemma_bc(caps: dict, n_max: int = 8, n_min: int = 2) -> Iterator[InstanceResult]:
    for n in range(n_min, n_max + 1):
        ok = check_lemma2(n)
        yield InstanceResult("lemma-bc", f"n={n}", PASS if ok else FAIL, "b_i in tau iff c_i in tau", "holds" if ok else "violated")


def job_lemma_attach(caps: dict, n_max: int = 3, k_max: int = 2, tri_k_max: int = 4) -> Iterator[InstanceResult]:
    cases = []
    for n in range(2, n_max + 1):
        for k in range(2, k_max + 1):
            cases.append((f"odd-alternate n={n},k={k}", lambda n=n, k=k: G.odd_tiling_alternate(n, k)))
            cases.append((f"odd-simple n={n},k={k}", lambda n=n, k=k: G.odd_tiling_simple(n, k)))
    for k in range(2, tri_k_max + 1):
        cases.append((f"triangles k={k}", lambda k=k: G.triangle_tiling(k)))
    for inst, make in cases:
        g = make()
        evens = G.attaching_edges(g, "even")
        ok = check_attach_edge_exclusion(g, evens)
        yield InstanceResult(
            "lemma-attach", inst, PASS if ok else FAIL, "no perfect matching uses a_{2i}",
            "holds" if ok else "violated", {"edges": [g.edge_labels[e] for e in evens]},
        )


def job_ind_pm(caps: dict, n_max: int = 8, n_min: int = 2) -> Iterator[InstanceResult]:
    for n in range(n_min, n_max + 1):
        inst = f"n={n}"

        def one(n=n, inst=inst):
            ind = independence_complex(aux_graph_xn(n), cap=caps["cap_faces"])
            pm = _complex(G.grid_2xn(n), caps)
            diff = complex_difference(ind, pm)
            return InstanceResult("ind-pm", inst, PASS if diff is None else FAIL, "Ind(X_n) = M_p(G_2xn)", "equal" if diff is None else f"differ ({diff})", {"faces": len(pm.faces)})

        yield _guard("ind-pm", inst, one)


def job_folds(caps: dict, n_max: int = 8, n_min: int = 3) -> Iterator[InstanceResult]:
    for n in range(n_min, n_max + 1):
        inst = f"n={n}"

        def one(n=n, inst=inst):
            g = aux_graph_xn(n)
            bettis = [reduced_betti(independence_complex(g, cap=caps["cap_faces"])).reduced_betti]
            steps = []
            try:
                for target in (f"b_{n - 2}", f"c_{n - 2}", f"a_{n - 1}"):
                    g = fold_reduce(g, f"a_{n}", target)
                    steps.append(target)
                    bettis.append(reduced_betti(independence_complex(g, cap=caps["cap_faces"])).reduced_betti)
                fold_sequence_grid(n)
            except FoldError as exc:
                return InstanceResult("folds", inst, FAIL, f"X_{n - 2} + P_3", str(exc), {"folded": steps})
            trimmed = [_trim(b) for b in bettis]
            invariant = all(b == trimmed[0] for b in trimmed)
            return InstanceResult(
                "folds", inst, PASS if invariant else FAIL, f"X_{n - 2} + P_3, betti invariant",
                f"certified; betti {trimmed}", {"folded": steps, "betti": trimmed},
            )

        yield _guard("folds", inst, one)


def _trim(b: list[int]) -> list[int]:
    b = list(b)
    while b and b[-1] == 0:
        b.pop()
    return b


def job_conjecture(caps: dict, m_max: int = 4, n_max: int = 4) -> Iterator[InstanceResult]:
    """Evidence only: homology of the m x n grid's perfect matching complex."""
    for m in range(1, m_max + 1):
        for n in range(1, n_max + 1):
            inst = f"m={m},n={n}"
            if max(m, n) > caps["sweep_max"]:
                yield _over_cap("conjecture", inst, inst)
                continue

            def one(m=m, n=n, inst=inst):
                r = reduced_betti(_complex(G.grid_mxn(m, n), caps))
                return InstanceResult("conjecture", inst, INFO, "", describe_betti(r), {"m": m, "n": n, **r.to_dict(), "torsion_free": (not r.void) and r.torsion_free})

            yield _guard("conjecture", inst, one)


def conjecture_csv(results: list[InstanceResult]) -> str:
    lines = ["m,n,betti,torsion_free"]
    for res in results:
        d = res.details
        if res.status == SKIP:
            m, n = (int(x.split("=")[1]) for x in res.instance.split(","))
            lines.append(f"{m},{n},skipped,")
            continue
        betti = "void" if d["void"] else " ".join(str(b) for b in d["reduced_betti"])
        flag = "" if d["void"] else str(d["torsion_free"]).lower()
        lines.append(f"{d['m']},{d['n']},{betti},{flag}")
    return "\n".join(lines) + "\n"


JOBS = {
    "thm-grid": job_thm_grid,
    "thm-even": job_thm_even,
    "thm-odd-alternate": job_thm_odd_alternate,
    "thm-triangles": job_thm_triangles,
    "thm-odd-simple": job_thm_odd_simple,
    "lemma-bad": job_lemma_bad,
    "lemma-bc": job_lemma_bc,
    "lemma-attach": job_lemma_attach,
    "ind-pm": job_ind_pm,
    "folds": job_folds,
    "grid-schedules": job_grid_schedules,
    "conjecture": job_conjecture,
}


def exit_code(results: list[InstanceResult]) -> int:
    statuses = {r.status for r in results}
    if FAIL in statuses:
        return 1
    if SKIP in statuses:
        return 3
    return 0
