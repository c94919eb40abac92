"""Post-hoc transcript auditor.

Replays a transcript from scratch and re-checks every declared
invariant offline: structural legality, claim conservation, degree
caches, embedding soundness, danger accounting, box potential
increments, parallel between-visit bounds, and the triangle claim.
Reports pass/fail per invariant with the move index of the first
violation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import GameState, FREE, MAKER, BREAKER, other_side
from .transcript import Transcript, TranscriptError
from .trees import TreeSpec, degree_census
from .oracles import perfect_matching_oracle
from .zoo import triangle_invariant_check


@dataclass
class Finding:
    invariant: str
    passed: bool
    detail: str = ""
    move_index: int | None = None

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        where = "" if self.move_index is None else f" (move {self.move_index})"
        detail = f": {self.detail}" if self.detail else ""
        return f"  [{mark}] {self.invariant}{where}{detail}"


@dataclass
class AuditReport:
    path: str
    kind: str
    findings: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(f.passed for f in self.findings)

    def render(self) -> str:
        head = f"{self.path} [{self.kind}]: {'clean' if self.ok else 'VIOLATIONS'}"
        return "\n".join([head] + [f.line() for f in self.findings])


def audit_path(path) -> AuditReport:
    t = Transcript.load(path)
    report = AuditReport(str(path), t.kind)
    report.findings = audit_transcript(t)
    return report


def audit_transcript(t: Transcript) -> list:
    if t.kind == "box":
        return _audit_box(t)
    findings = []
    findings += _audit_structure(t)
    if any(not f.passed for f in findings):
        return findings
    if t.kind == "tree-embed":
        findings += _audit_tree_embed(t)
    elif t.kind == "triangle":
        findings += _audit_triangle(t)
    elif t.kind == "matching":
        findings += _audit_matching(t)
    elif t.kind == "hampath":
        findings += _audit_hampath(t)
    return findings


# -- structural checks shared by every game transcript ---------------------------


def _audit_structure(t: Transcript) -> list:
    findings = []
    state = t.build_board()
    bias = {"maker": t.bias[0], "breaker": t.bias[1]}
    expected = t.first
    claimed_by = {"maker": 0, "breaker": 0}
    ok_replay = True
    for i, mv in enumerate(t.moves):
        if mv.player != expected:
            findings.append(
                Finding("turn-order", False, f"expected {expected}, got {mv.player}", i)
            )
            return findings
        if len(mv.elements) > bias[mv.player]:
            findings.append(
                Finding("bias-respected", False,
                        f"{mv.player} claimed {len(mv.elements)} > {bias[mv.player]}", i)
            )
            return findings
        free_before = state.free_count
        if (
            len(mv.elements) < min(bias[mv.player], free_before)
            and not mv.note.get("pass")
            and i < len(t.moves) - 1
            and not mv.note.get("all_boards_won")
        ):
            # a short move with free elements left: legal only for
            # passes; flagged, not fatal
            findings.append(
                Finding("short-move-annotated", True,
                        f"{mv.player} claimed {len(mv.elements)} of {free_before} free", i)
            )
        for e in mv.elements:
            try:
                state.apply_claim(mv.player, e)
            except Exception as exc:
                findings.append(Finding("replay", False, str(exc), i))
                return findings
            claimed_by[mv.player] += 1
        expected = other_side(expected)
    findings.append(Finding("replay", True, f"{len(t.moves)} moves"))
    own_counts = {
        "maker": sum(1 for b in state.ownership if b == MAKER),
        "breaker": sum(1 for b in state.ownership if b == BREAKER),
    }
    conserved = own_counts == claimed_by
    findings.append(
        Finding("claim-conservation", conserved, f"{own_counts} vs {claimed_by}")
    )
    if state.is_edge_board:
        ok = state.maker_degrees == state.recompute_degrees("maker") and (
            state.breaker_degrees == state.recompute_degrees("breaker")
        )
        findings.append(Finding("degree-cache", ok))
    return findings


def _replay_final(t: Transcript) -> GameState:
    state = t.build_board()
    for mv in t.moves:
        for e in mv.elements:
            state.apply_claim(mv.player, e)
    return state


# -- tree embedding --------------------------------------------------------------


def _audit_tree_embed(t: Transcript) -> list:
    findings = []
    n = t.params["n"]
    tree = TreeSpec.from_edges(n, [tuple(e) for e in t.params["tree_edges"]])
    thresholds = t.params.get("thresholds", {})
    alpha = thresholds.get("alpha", 0.004)
    state = t.build_board()

    # incremental embedding from the per-move notes
    f: dict = {}
    taken: set = set()

    def absorb(note, idx):
        for key in ("assign", "embed"):
            for tv, bv in note.get(key, []):
                if tv in f or bv in taken:
                    findings.append(
                        Finding("embedding-injective", False,
                                f"tree {tv} -> board {bv} duplicates", idx)
                    )
                    continue
                f[tv] = bv
                taken.add(bv)

    danger_threshold = math.sqrt(n)
    danger_bound = 4 * n ** (1 + alpha) / math.sqrt(n)
    max_danger = 0
    min_avail_stage1 = n
    stage1_claims = 0
    for i, mv in enumerate(t.moves):
        if mv.player == "maker":
            absorb(mv.note, i)
            if mv.note.get("stage") == 1:
                stage1_claims += len(mv.elements)
                min_avail_stage1 = min(min_avail_stage1, n - len(f))
        for e in mv.elements:
            state.apply_claim(mv.player, e)
        # dangerous = high opponent degree, available or open w.r.t. T
        count = 0
        for v in range(n):
            if state.breaker_degrees[v] < danger_threshold:
                continue
            if v not in taken:
                count += 1
            else:
                tv = next(x for x, b in f.items() if b == v)
                if any(w not in f for w in tree.adj[tv]):
                    count += 1
        max_danger = max(max_danger, count)
    findings.append(
        Finding(
            "danger-count",
            max_danger <= danger_bound,
            f"max {max_danger} vs bound {danger_bound:.2f}",
        )
    )
    case = t.guards.get("case") or t.stats.get("case")
    if case == "I":
        floor = 0.5 * n ** (2.0 / 3.0)
        findings.append(
            Finding(
                "stage1-availability",
                min_avail_stage1 >= floor,
                f"min available {min_avail_stage1} vs floor {floor:.2f}",
            )
        )
    if case == "II":
        census = degree_census(tree)
        bound = 3 * len(census.d1) * n ** thresholds.get("bare_exp", 0.2)
        findings.append(
            Finding(
                "stage1-work-bound",
                stage1_claims <= bound,
                f"{stage1_claims} stage-1 claims vs bound {bound:.2f}",
            )
        )
        findings += _audit_between_visits(t)
    if t.outcome and t.outcome.kind == "maker_win":
        emb = {int(k): v for k, v in t.stats.get("embedding", {}).items()}
        ok = len(emb) == n and len(set(emb.values())) == n
        if ok:
            maker_edges = {
                state.endpoints(e)
                for e in range(state.board_size)
                if state.ownership[e] == MAKER
            }
            for u, v in tree.edges():
                a, b = emb[u], emb[v]
                if (min(a, b), max(a, b)) not in maker_edges:
                    ok = False
                    break
        findings.append(Finding("embedding-sound", ok, f"{len(emb)} vertices"))
    return findings


def _audit_between_visits(t: Transcript) -> list:
    regions = t.stats.get("regions")
    if not regions:
        return []
    q = t.bias[1]
    element_to_board = {}
    for i, elems in enumerate(regions):
        for e in elems:
            element_to_board[e] = i
    total = sum(len(r) for r in regions)
    k_cap = math.ceil(total / (q + 1))
    bound = q * (1 + math.log(len(regions) + k_cap))
    since = [0] * len(regions)
    worst = 0
    worst_move = None
    for i, mv in enumerate(t.moves):
        if mv.player == "breaker":
            for e in mv.elements:
                j = element_to_board.get(e)
                if j is not None:
                    since[j] += 1
                    if since[j] > worst:
                        worst, worst_move = since[j], i
        else:
            j = mv.note.get("board")
            if j is not None:
                since[j] = 0
    return [
        Finding(
            "parallel-between-visits",
            worst <= bound,
            f"max {worst} opponent claims between visits vs bound {bound:.2f}",
            worst_move if worst > bound else None,
        )
    ]


# -- other kinds --------------------------------------------------------------


def _audit_triangle(t: Transcript) -> list:
    state = _replay_final(t)
    edges = {
        state.endpoints(e)
        for e in range(state.board_size)
        if state.ownership[e] == MAKER
    }
    ok = triangle_invariant_check(state.maker_degrees, edges)
    return [Finding("triangle-degree-claim", ok, f"{len(edges)} maker edges")]


def _audit_matching(t: Transcript) -> list:
    if not t.outcome or t.outcome.kind != "maker_win":
        return []
    state = _replay_final(t)
    a_vs = t.params["a_vertices"]
    b_vs = t.params["b_vertices"]
    b_index = {v: j for j, v in enumerate(b_vs)}
    adj = [[] for _ in a_vs]
    for i, u in enumerate(a_vs):
        for v in b_vs:
            if u != v and state.ownership[state.edge(min(u, v), max(u, v))] == MAKER:
                adj[i].append(b_index[v])
    matching = perfect_matching_oracle(adj, len(b_vs))
    ok = len(matching) == len(a_vs)
    return [Finding("matching-perfect", ok, f"matched {len(matching)} of {len(a_vs)}")]


def _audit_hampath(t: Transcript) -> list:
    if not t.outcome or t.outcome.kind != "maker_win":
        return []
    path = t.stats.get("final_path")
    if not path:
        return [Finding("hampath-valid", False, "no final path recorded")]
    state = _replay_final(t)
    k = t.params["k"]
    a, b = t.params["a"], t.params["b"]
    ok = (
        path[0] == a
        and path[-1] == b
        and sorted(path) == list(range(k))
        and all(
            state.ownership[state.edge(min(u, v), max(u, v))] == MAKER
            for u, v in zip(path, path[1:])
        )
    )
    return [Finding("hampath-valid", ok, f"path of {len(path)} vertices")]


# -- box games ------------------------------------------------------------------


def _audit_box(t: Transcript) -> list:
    findings = []
    m = t.params["m"]
    q = t.params.get("q")
    weights = [0.0] * m
    phi = float(m)
    round_no = 0
    pending = None
    tol = 1e-9
    for i, mv in enumerate(t.moves):
        if mv.player == "boxmaker":
            claims = mv.note.get("claims")
            if claims is None or len(claims) != m:
                findings.append(Finding("box-claims", False, "bad claim vector", i))
                return findings
            deltas = [c / q for c in claims] if q else [float(c) for c in claims]
            if q and sum(claims) > q:
                findings.append(Finding("box-bias", False, f"claims sum {sum(claims)}", i))
                return findings
            if not q and abs(sum(deltas) - 1.0) > 1e-12:
                findings.append(Finding("box-deltas", False, f"sum {sum(deltas)}", i))
                return findings
            pending = [w + d for w, d in zip(weights, deltas)]
        elif mv.player == "boxbreaker":
            if pending is None:
                findings.append(Finding("box-order", False, "reset before claims", i))
                return findings
            reset = mv.note.get("reset")
            best = max(range(m), key=lambda j: (pending[j], -j))
            if reset != best:
                findings.append(
                    Finding("box-max-reset", False, f"reset {reset}, max-weight box is {best}", i)
                )
                return findings
            round_no += 1
            bound = 1 + math.log(m + round_no)
            if max(pending) > bound + tol:
                findings.append(
                    Finding("box-weight-bound", False,
                            f"weight {max(pending):.4f} > {bound:.4f}", i)
                )
                return findings
            phi_before = phi
            phi_after_reset = sum(math.exp(w) for j, w in enumerate(pending) if j != reset) + 1.0
            if phi_after_reset - phi_before > 1 + tol:
                findings.append(
                    Finding("box-phi-increment", False,
                            f"Phi grew by {phi_after_reset - phi_before:.6f}", i)
                )
                return findings
            phi = phi_after_reset
            weights = list(pending)
            weights[reset] = 0.0
            pending = None
    findings.append(Finding("box-rounds-replayed", True, f"{round_no} rounds"))
    findings.append(Finding("box-weight-bound", True))
    findings.append(Finding("box-phi-increment", True))
    findings.append(Finding("box-max-reset", True))
    return findings
