"""String combinatorics for the reduced special biserial presentations.

Words are alternating walks in the reduced quiver; a direct letter ascends
(towards the top of the module), an inverse letter descends.  The syzygy is
computed combinatorially from the projective covers; the translate is
available through two independent routes, the hook/cohook end calculus and
the squared syzygy twisted by the rotation, which are compared against each
other on every call.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .presentation import (PresentationError, ReducedPresentation, Slot,
                           maximal_paths, surviving_arrow_of_slot)


class StringError(ValueError):
    pass


class SyzygyDecomposes(StringError):
    """The kernel of the projective cover is not a single string."""


Letter = tuple[str, bool]  # (arrow name, is_inverse)


@dataclass(frozen=True)
class StringWord:
    """A reduced walk; trivial words carry just their vertex."""

    base: str
    letters: tuple[Letter, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def dim(self) -> int:
        return len(self.letters) + 1

    def urepr(self) -> str:
        if not self.letters:
            return f"e({self.base})"
        return " ".join(("~" if inv else "") + a for a, inv in self.letters)

    def to_json(self) -> dict:
        return {"base": self.base,
                "letters": [("~" if inv else "") + a for a, inv in self.letters]}


class StringAlgebra:
    """The string-module engine of a slot-backed reduced presentation."""

    def __init__(self, red: ReducedPresentation):
        if red.order is None:
            raise StringError("need a slot-backed reduced presentation")
        self.red = red
        self.order = red.order
        self.arrow = {a.name: a for a in red.arrows}
        self.out_of_slot = surviving_arrow_of_slot(red)
        self.in_of_slot = {a.dst_slot: a.name for a in red.arrows
                           if a.dst_slot is not None}
        self.out_routes: dict[str, list[tuple[str, ...]]] = {
            v: [tuple(p) for p in maximal_paths(red, v)] for v in red.vertices}
        self.serial = {v: len(self.out_routes[v]) == 1 for v in red.vertices}
        self.sigma_vertex = dict(self.order.rot.edge_map)
        self.sigma_vertex_inv = {b: a for a, b in self.sigma_vertex.items()}
        self.sigma_arrow = {}
        for a in red.arrows:
            img_slot = self.order.sigma_slot[a.src_slot]
            self.sigma_arrow[a.name] = self.out_of_slot[img_slot]
        self.sigma_arrow_inv = {b: a for a, b in self.sigma_arrow.items()}
        # maximal paths into a vertex, keyed by their final arrow
        self.in_routes: dict[str, dict[str, tuple[str, ...]]] = {v: {} for v in red.vertices}
        for v in red.vertices:
            for route in self.out_routes[v]:
                target = self.arrow[route[-1]].dst
                self.in_routes[target][route[-1]] = route
        self._proj_words = {self.canonical_key(self.direct_word(r))
                            for v in red.vertices if self.serial[v]
                            for r in self.out_routes[v]}

    # -- basic word handling --------------------------------------------

    def ends(self, w: StringWord) -> tuple[str, str]:
        if not w.letters:
            return w.base, w.base
        first = self.arrow[w.letters[0][0]]
        start = first.src if not w.letters[0][1] else first.dst
        last = self.arrow[w.letters[-1][0]]
        end = last.dst if not w.letters[-1][1] else last.src
        return start, end

    def vertices_of(self, w: StringWord) -> tuple[str, ...]:
        out = [self.ends(w)[0]]
        for name, inv in w.letters:
            a = self.arrow[name]
            out.append(a.dst if not inv else a.src)
        return tuple(out)

    def invert(self, w: StringWord) -> StringWord:
        if not w.letters:
            return w
        return StringWord(base=self.ends(w)[1],
                          letters=tuple((a, not inv) for a, inv in reversed(w.letters)))

    def canonical_key(self, w: StringWord):
        if not w.letters:
            return ("e", w.base)
        other = self.invert(w)
        return min(w.letters, other.letters)

    def equal(self, a: StringWord, b: StringWord) -> bool:
        return self.canonical_key(a) == self.canonical_key(b)

    def direct_word(self, path: Iterable[str]) -> StringWord:
        path = tuple(path)
        if not path:
            raise StringError("direct_word needs at least one arrow")
        return StringWord(base=self.arrow[path[0]].src,
                          letters=tuple((a, False) for a in path))

    def simple(self, v: str) -> StringWord:
        if v not in self.red.vertices:
            raise StringError(f"no vertex {v!r}")
        return StringWord(base=v)

    # -- validity ---------------------------------------------------------

    def _run_valid(self, path: tuple[str, ...]) -> bool:
        """A direct run is valid iff from every starting position it stays
        within the socle walk, with the full walk allowed only from serial
        vertices."""
        for j in range(len(path)):
            a = self.arrow[path[j]]
            slot = a.src_slot
            limit = self.order.offset[self.order.cycle_index[slot]]
            if not self.serial[a.src]:
                limit -= 1
            if len(path) - j > limit:
                return False
            if j > 0:
                prev = self.arrow[path[j - 1]]
                if prev.dst_slot != a.src_slot:
                    return False
        return True

    def is_valid(self, w: StringWord) -> bool:
        try:
            self.validate(w)
            return True
        except StringError:
            return False

    def validate(self, w: StringWord) -> None:
        if not w.letters:
            if w.base not in self.red.vertices:
                raise StringError(f"no vertex {w.base!r}")
            return
        verts = self.vertices_of(w)
        del verts  # walk consistency is checked below via slots
        letters = w.letters
        for t in range(1, len(letters)):
            (a, ainv), (b, binv) = letters[t - 1], letters[t]
            A, B = self.arrow[a], self.arrow[b]
            if not ainv and not binv:
                if A.dst != B.src:
                    raise StringError("direct letters do not compose")
            elif not ainv and binv:
                if A.dst != B.dst or a == b:
                    raise StringError("invalid peak")
            elif ainv and not binv:
                if A.src != B.src or a == b:
                    raise StringError("invalid valley")
            else:
                if B.dst != A.src:
                    raise StringError("inverse letters do not compose")
        for run in self._direct_runs(w):
            if not self._run_valid(run):
                raise StringError(f"forbidden run {run}")

    def _direct_runs(self, w: StringWord) -> list[tuple[str, ...]]:
        """All maximal quiver-path runs of the walk: ascending stretches as
        written, descending stretches reversed."""
        runs = []
        cur: list[str] = []
        cur_inv = False
        for a, inv in w.letters:
            if cur and inv == cur_inv:
                cur.append(a)
            else:
                if cur:
                    runs.append(tuple(reversed(cur)) if cur_inv else tuple(cur))
                cur = [a]
                cur_inv = inv
        if cur:
            runs.append(tuple(reversed(cur)) if cur_inv else tuple(cur))
        return runs

    # -- structural positions ----------------------------------------------

    def tops(self, w: StringWord) -> list[int]:
        n = len(w.letters)
        if n == 0:
            return [0]
        out = []
        for t in range(n + 1):
            left_ok = t == 0 or not w.letters[t - 1][1]
            right_ok = t == n or w.letters[t][1]
            if left_ok and right_ok:
                out.append(t)
        return out

    def valleys(self, w: StringWord) -> list[int]:
        n = len(w.letters)
        if n == 0:
            return [0]
        out = []
        for t in range(n + 1):
            left_ok = t == 0 or w.letters[t - 1][1]
            right_ok = t == n or not w.letters[t][1]
            if left_ok and right_ok:
                out.append(t)
        return out

    def is_projective_word(self, w: StringWord) -> bool:
        return self.canonical_key(w) in self._proj_words

    # -- canonical module realizations ---------------------------------------

    def route_into_slot(self, t: Slot) -> tuple[str, ...]:
        """The maximal path whose final arrow lands in slot t."""
        name = self.in_of_slot.get(t)
        if name is None:
            raise StringError(f"no surviving in-arrow at slot {t}")
        target = self.arrow[name].dst
        return self.in_routes[target][name]

    def _cycle_slot_pair(self, e: str) -> tuple[Slot, Slot]:
        """The two slots of a cycle edge: (slot at v_u, slot at v_{u+1})."""
        order = self.order
        cycle = order.cycle
        u = cycle.edge_index(e)
        g = order.graph
        if cycle.k == 1:
            v = cycle.vertex(1)
            first, second = g.positions_of(v, e)
            return Slot(v, first), Slot(v, second)
        vu, vnext = cycle.vertex(u), cycle.vertex(u + 1)
        return (Slot(vu, g.vertices[vu].index(e)),
                Slot(vnext, g.vertices[vnext].index(e)))

    def u_word(self, e: str) -> StringWord:
        """The outer quasi-simple at a cycle edge: the projective quotient
        keeping the branch that arrives through the inner detour."""
        sA, sB = self._cycle_slot_pair(e)
        route = self.route_into_slot(sB)
        return self.direct_word(route[1:])

    def v_word(self, e: str) -> StringWord:
        """The inner quasi-simple at a cycle edge."""
        sA, sB = self._cycle_slot_pair(e)
        route = self.route_into_slot(sA)
        return self.direct_word(route[1:])

    def top_quotient_word(self, x: str) -> StringWord:
        """P(x)/soc as a string."""
        routes = sorted(self.in_routes[x].values())
        if len(routes) == 1:
            r = routes[0]
            if len(r) == 1:
                return self.simple(x)
            return self.direct_word(r[1:])
        r1, r2 = routes
        letters = tuple((a, False) for a in r1[1:]) + \
            tuple((a, True) for a in reversed(r2[1:]))
        w = StringWord(base=self.arrow[r1[1]].src if len(r1) > 1 else x,
                       letters=letters)
        self.validate(w)
        return w

    def radical_word(self, x: str) -> StringWord:
        """rad P(x) as a string."""
        routes = sorted(self.in_routes[x].values())
        if len(routes) == 1:
            r = routes[0]
            if len(r) == 1:
                return self.simple(self.sigma_vertex_inv[x])
            return self.direct_word(r[:-1])
        r1, r2 = routes
        letters = tuple((a, True) for a in reversed(r1[:-1])) + \
            tuple((a, False) for a in r2[:-1])
        w = StringWord(base=self.arrow[r1[-2]].dst if len(r1) > 1 else x,
                       letters=letters)
        self.validate(w)
        return w

    def sigma_word(self, w: StringWord, power: int = 1) -> StringWord:
        amap = self.sigma_arrow if power >= 0 else self.sigma_arrow_inv
        vmap = self.sigma_vertex if power >= 0 else self.sigma_vertex_inv
        for _ in range(abs(power)):
            w = StringWord(base=vmap[w.base],
                           letters=tuple((amap[a], inv) for a, inv in w.letters))
        return w

    # -- syzygy and cosyzygy -------------------------------------------------

    def _dim_projective(self, c: str) -> int:
        routes = list(self.in_routes[c].values())
        return 1 + sum(len(r) for r in routes) - (len(routes) - 1)

    def syzygy(self, w: StringWord) -> StringWord:
        """The kernel string of the projective cover."""
        self.validate(w)
        if self.is_projective_word(w):
            raise StringError("projective module has zero syzygy")
        word = self._kernel_word(w, _MainView(self))
        self.validate(word)
        return word

    def cosyzygy(self, w: StringWord) -> StringWord:
        """The cokernel string of the injective envelope."""
        self.validate(w)
        if self.is_projective_word(w):
            raise StringError("injective module has zero cosyzygy")
        flipped = StringWord(base=w.base,
                             letters=tuple((a, not inv) for a, inv in w.letters))
        result = self._kernel_word(flipped, _OpView(self))
        word = StringWord(base=result.base,
                          letters=tuple((a, not inv) for a, inv in result.letters))
        self.validate(word)
        return word

    def _kernel_word(self, w: StringWord, view) -> StringWord:
        tops = self.tops(w)
        letters = w.letters
        pieces: list[list[Letter]] = []
        total_cover = 0
        top_vertices = []
        for idx, t in enumerate(tops):
            # ascending run into the top from the left
            lrun: list[str] = []
            i = t - 1
            while i >= 0 and not letters[i][1]:
                lrun.insert(0, letters[i][0])
                i -= 1
            # descending run to the right, reversed to a path into the top
            rrun: list[str] = []
            i = t
            while i < len(letters) and letters[i][1]:
                rrun.insert(0, letters[i][0])
                i += 1
            c = view.vertex_at(w, t)
            top_vertices.append(c)
            routes = view.routes_into(c)
            lroute = rroute = None
            if lrun:
                lroute = routes[lrun[-1]]
                if tuple(lroute[-len(lrun):]) != tuple(lrun):
                    raise StringError("run is not a socle-walk suffix")
            if rrun:
                rroute = routes[rrun[-1]]
                if tuple(rroute[-len(rrun):]) != tuple(rrun):
                    raise StringError("run is not a socle-walk suffix")
            remaining = [r for key, r in sorted(routes.items())
                         if r is not lroute and r is not rroute]
            if lroute is None:
                lroute = remaining.pop(0) if remaining else None
            if rroute is None:
                rroute = remaining.pop(0) if remaining else None
            total_cover += view.dim_projective(c)

            lrem = tuple(lroute[:len(lroute) - len(lrun)]) if lroute is not None else None
            rrem = tuple(rroute[:len(rroute) - len(rrun)]) if rroute is not None else None
            if lrem is not None and not lrem:
                raise SyzygyDecomposes("a run covers a full socle walk")
            if rrem is not None and not rrem:
                raise SyzygyDecomposes("a run covers a full socle walk")

            piece: list[Letter] = []
            if lrem is not None:
                cut = lrem[:-1] if idx == 0 else lrem
                piece.extend((a, True) for a in reversed(cut))
            if rrem is not None:
                cut = rrem[:-1] if idx == len(tops) - 1 else rrem
                piece.extend((a, False) for a in cut)
            pieces.append(piece)

        out_letters = tuple(x for piece in pieces for x in piece)
        if out_letters:
            word = StringWord(base="", letters=out_letters)
            start = view.start_vertex(out_letters[0])
            word = StringWord(base=start, letters=out_letters)
        else:
            word = StringWord(base=view.socle_vertex(top_vertices[0]))
        expected = total_cover - w.dim
        if word.dim != expected:
            raise SyzygyDecomposes(
                f"kernel dimension {word.dim} != expected {expected}")
        return word


class _MainView:
    def __init__(self, alg: StringAlgebra):
        self.alg = alg

    def vertex_at(self, w: StringWord, t: int) -> str:
        return self.alg.vertices_of(w)[t]

    def routes_into(self, c: str) -> dict[str, tuple[str, ...]]:
        return self.alg.in_routes[c]

    def dim_projective(self, c: str) -> int:
        return self.alg._dim_projective(c)

    def socle_vertex(self, c: str) -> str:
        return self.alg.sigma_vertex_inv[c]

    def start_vertex(self, letter: Letter) -> str:
        a = self.alg.arrow[letter[0]]
        return a.src if not letter[1] else a.dst


class _OpView:
    """The same engine over the opposite quiver: arrows reversed, socle
    walks read backwards, the rotation inverted."""

    def __init__(self, alg: StringAlgebra):
        self.alg = alg
        self.op_in_routes: dict[str, dict[str, tuple[str, ...]]] = \
            {v: {} for v in alg.red.vertices}
        for v in alg.red.vertices:
            for route in alg.out_routes[v]:
                rev = tuple(reversed(route))
                self.op_in_routes[v][rev[-1]] = rev

    def vertex_at(self, w: StringWord, t: int) -> str:
        # w is already flipped; over the opposite quiver the walk visits the
        # same vertices with src/dst exchanged
        out = []
        first = w.letters[0] if w.letters else None
        if first is None:
            return w.base
        a = self.alg.arrow[first[0]]
        out.append(a.dst if not first[1] else a.src)
        for name, inv in w.letters:
            a = self.alg.arrow[name]
            out.append(a.src if not inv else a.dst)
        return out[t]

    def routes_into(self, c: str) -> dict[str, tuple[str, ...]]:
        return self.op_in_routes[c]

    def dim_projective(self, c: str) -> int:
        routes = list(self.op_in_routes[c].values())
        return 1 + sum(len(r) for r in routes) - (len(routes) - 1)

    def socle_vertex(self, c: str) -> str:
        return self.alg.sigma_vertex[c]

    def start_vertex(self, letter: Letter) -> str:
        a = self.alg.arrow[letter[0]]
        return a.dst if not letter[1] else a.src


class AmbiguousHook(StringError):
    """Raised when an end operation on a trivial word has two candidates."""


class TranslateEngine:
    """Hook/cohook end calculus on top of a StringAlgebra.

    The forward operations realize the inverse translate (adding hooks where
    possible, deleting cohooks otherwise, left end first); the backward
    operations realize the translate.  Every public translate is
    cross-checked against the squared-syzygy route by the caller.
    """

    def __init__(self, alg: StringAlgebra):
        self.alg = alg

    # -- growing / shrinking helpers ----------------------------------------

    def _next_descent(self, letters: list[Letter]) -> Optional[str]:
        """The unique arrow by which the walk can keep descending."""
        alg = self.alg
        last, linv = letters[-1]
        lastarrow = alg.arrow[last]
        if not linv:  # peak: the other in-arrow of the end vertex
            cands = [n for n in alg.in_routes[lastarrow.dst] if n != last]
            return cands[0] if cands else None
        cont = alg.in_of_slot.get(lastarrow.src_slot)
        if cont is None:
            return None
        run = [cont] + [a for a, _ in self._trailing_descent(letters)]
        return cont if alg._run_valid(tuple(run)) else None

    def _next_ascent(self, letters: list[Letter]) -> Optional[str]:
        """The unique arrow by which the walk can keep ascending."""
        alg = self.alg
        last, linv = letters[-1]
        lastarrow = alg.arrow[last]
        if linv:  # valley: the other out-arrow of the end vertex
            cands = [a.name for a in alg.red.arrows
                     if a.src == lastarrow.src and a.name != last]
            return cands[0] if cands else None
        cont = alg.out_of_slot.get(lastarrow.dst_slot)
        if cont is None:
            return None
        run = [a for a, _ in self._trailing_ascent(letters)] + [cont]
        return cont if alg._run_valid(tuple(run)) else None

    def _trailing_ascent(self, letters) -> list[Letter]:
        run: list[Letter] = []
        for a, inv in reversed(letters):
            if inv:
                break
            run.insert(0, (a, inv))
        return run

    def _trailing_descent(self, letters) -> list[Letter]:
        """Trailing inverse letters, returned in quiver-path order."""
        run: list[Letter] = []
        for a, inv in reversed(letters):
            if not inv:
                break
            run.append((a, inv))
        return run

    def _complete_descent(self, letters: list[Letter]) -> None:
        while True:
            nxt = self._next_descent(letters)
            if nxt is None:
                return
            letters.append((nxt, True))

    def _complete_ascent(self, letters: list[Letter]) -> None:
        while True:
            nxt = self._next_ascent(letters)
            if nxt is None:
                return
            letters.append((nxt, False))

    def _rebase(self, w: StringWord, letters: list[Letter]) -> StringWord:
        if letters:
            first, finv = letters[0]
            a = self.alg.arrow[first]
            base = a.src if not finv else a.dst
        else:
            base = self.alg.ends(w)[1]
        return StringWord(base=base, letters=tuple(letters))

    # -- the four right-end operations ---------------------------------------

    def right_hook_add(self, w: StringWord) -> Optional[StringWord]:
        """Append a direct letter and the maximal descent, if possible."""
        alg = self.alg
        end = alg.ends(w)[1]
        cands = []
        for a in alg.red.arrows:
            if a.src != end:
                continue
            if w.letters:
                last, linv = w.letters[-1]
                if not linv:
                    lastarrow = alg.arrow[last]
                    if lastarrow.dst_slot != a.src_slot:
                        continue
                    run = [x for x, _ in self._trailing_ascent(list(w.letters))] + [a.name]
                    if not alg._run_valid(tuple(run)):
                        continue
                elif a.name == last:
                    continue
            cands.append(a.name)
        if not cands:
            return None
        if len(cands) > 1:
            raise AmbiguousHook(f"two hooks possible at {end!r}")
        letters = list(w.letters) + [(cands[0], False)]
        self._complete_descent(letters)
        out = StringWord(base=alg.vertices_of(w)[0], letters=tuple(letters))
        alg.validate(out)
        return out

    def right_cohook_delete(self, w: StringWord) -> Optional[StringWord]:
        """Remove the trailing ascent and the inverse letter before it;
        None when the end carries no cohook (the module vanishes there)."""
        run = self._trailing_ascent(list(w.letters))
        cut = len(w.letters) - len(run)
        if cut == 0:
            return None  # trivial word or a full ascent: no cohook to delete
        letters = list(w.letters[:cut - 1])
        return self._keep_prefix(w, letters)

    def _keep_prefix(self, w: StringWord, letters: list[Letter]) -> StringWord:
        if letters:
            return StringWord(base=self.alg.vertices_of(w)[0], letters=tuple(letters))
        return StringWord(base=self.alg.vertices_of(w)[0])

    def right_cohook_add(self, w: StringWord) -> Optional[StringWord]:
        """Append an inverse letter and the maximal ascent, if possible."""
        alg = self.alg
        end = alg.ends(w)[1]
        cands = []
        for name in alg.in_routes[end]:
            a = alg.arrow[name]
            if w.letters:
                last, linv = w.letters[-1]
                if not linv:
                    if name == last:
                        continue
                else:
                    lastarrow = alg.arrow[last]
                    if a.dst_slot != lastarrow.src_slot:
                        continue
                    run = [name] + [x for x, _ in self._trailing_descent(list(w.letters))]
                    if not alg._run_valid(tuple(run)):
                        continue
            cands.append(name)
        if not cands:
            return None
        if len(cands) > 1:
            raise AmbiguousHook(f"two cohooks possible at {end!r}")
        letters = list(w.letters) + [(cands[0], True)]
        self._complete_ascent(letters)
        out = StringWord(base=alg.vertices_of(w)[0], letters=tuple(letters))
        alg.validate(out)
        return out

    def right_hook_delete(self, w: StringWord) -> Optional[StringWord]:
        """Remove a trailing hook (descent plus the direct letter before it)
        when re-adding a hook restores the word."""
        letters = list(w.letters)
        i = len(letters)
        while i > 0 and letters[i - 1][1]:
            i -= 1
        if i == 0 or letters[i - 1][1]:
            return None
        candidate = self._keep_prefix(w, letters[:i - 1])
        removed_arrow = letters[i - 1][0]
        try:
            redo = self.right_hook_add(candidate)
        except AmbiguousHook:
            trial = list(candidate.letters) + [(removed_arrow, False)]
            self._complete_descent(trial)
            redo = StringWord(base=self.alg.vertices_of(w)[0], letters=tuple(trial))
        if redo is not None and redo.letters == w.letters:
            return candidate
        return None

    # -- composite operations -------------------------------------------------

    def right_op_forward(self, w: StringWord) -> Optional[StringWord]:
        hooked = self.right_hook_add(w)
        if hooked is not None:
            return hooked
        return self.right_cohook_delete(w)

    def left_op_forward(self, w: StringWord) -> Optional[StringWord]:
        out = self.right_op_forward(self.alg.invert(w))
        return None if out is None else self.alg.invert(out)

    def right_op_backward(self, w: StringWord) -> Optional[StringWord]:
        out = self.right_hook_delete(w)
        if out is not None:
            return out
        return self.right_cohook_add(w)

    def left_op_backward(self, w: StringWord) -> Optional[StringWord]:
        out = self.right_op_backward(self.alg.invert(w))
        return None if out is None else self.alg.invert(out)

    def tau_inverse_hooks(self, w: StringWord) -> StringWord:
        step = self.left_op_forward(w)
        if step is None:
            raise StringError("translate vanished on the left")
        out = self.right_op_forward(step)
        if out is None:
            raise StringError("translate vanished on the right")
        return out

    def tau_hooks(self, w: StringWord) -> StringWord:
        step = self.right_op_backward(w)
        if step is None:
            raise StringError("translate vanished on the right")
        out = self.left_op_backward(step)
        if out is None:
            raise StringError("translate vanished on the left")
        return out


@dataclass(frozen=True)
class MouthModule:
    tag: str           # "U" | "V" | "S" | "P/soc"
    label: str
    word: StringWord


class TranslateMismatch(StringError):
    """The hook route and the syzygy route disagree (internal bug signal)."""


def tau_syzygy(alg: StringAlgebra, w: StringWord) -> StringWord:
    return alg.syzygy(alg.syzygy(alg.sigma_word(w, 1)))


def tau_inverse_syzygy(alg: StringAlgebra, w: StringWord) -> StringWord:
    return alg.sigma_word(alg.cosyzygy(alg.cosyzygy(w)), -1)


def _special_translates(alg: StringAlgebra):
    """Canonical keys of the projective-quotient and radical strings, for
    the canonical sequences through a projective-injective middle."""
    psoc = {}
    radp = {}
    for c in alg.red.vertices:
        psoc[alg.canonical_key(alg.top_quotient_word(c))] = c
        radp[alg.canonical_key(alg.radical_word(c))] = c
    return psoc, radp


def ar_translate(alg: StringAlgebra, w: StringWord) -> StringWord:
    """The translate of a non-projective string, by the hook calculus,
    cross-checked against the squared syzygy twisted by the rotation."""
    alg.validate(w)
    if alg.is_projective_word(w):
        raise StringError("projective-injective strings have no translate")
    psoc, _ = _special_translates(alg)
    c = psoc.get(alg.canonical_key(w))
    if c is not None:
        return alg.radical_word(c)
    expected = tau_syzygy(alg, w)
    try:
        hooked = TranslateEngine(alg).tau_hooks(w)
    except AmbiguousHook:
        return expected
    if not alg.equal(hooked, expected):
        raise TranslateMismatch(
            f"hook route {hooked.urepr()} != syzygy route {expected.urepr()}")
    return expected


def ar_translate_inverse(alg: StringAlgebra, w: StringWord) -> StringWord:
    alg.validate(w)
    if alg.is_projective_word(w):
        raise StringError("projective-injective strings have no translate")
    _, radp = _special_translates(alg)
    c = radp.get(alg.canonical_key(w))
    if c is not None:
        return alg.top_quotient_word(c)
    expected = tau_inverse_syzygy(alg, w)
    try:
        hooked = TranslateEngine(alg).tau_inverse_hooks(w)
    except AmbiguousHook:
        return expected
    if not alg.equal(hooked, expected):
        raise TranslateMismatch(
            f"hook route {hooked.urepr()} != syzygy route {expected.urepr()}")
    return expected


def syzygy(alg: StringAlgebra, w: StringWord) -> StringWord:
    return alg.syzygy(w)


def orbit_length(alg: StringAlgebra, w: StringWord, cap: Optional[int] = None) -> int:
    """The least n >= 1 with translate^n(w) isomorphic to w."""
    if cap is None:
        cap = 4 * (2 * len(alg.red.vertices) + len(w.letters) + 8)
    key = alg.canonical_key(w)
    cur = w
    for n in range(1, cap + 1):
        cur = ar_translate(alg, cur)
        if alg.canonical_key(cur) == key:
            return n
    raise StringError(f"no periodic orbit within {cap} steps")


def ar_sequence_middle(alg: StringAlgebra, x: StringWord
                       ) -> tuple[list[StringWord], list[str]]:
    """The middle of the almost-split sequence ending at x: the one-sided
    modifications of the translate, plus projective summands when x is a
    projective quotient by its socle.  Verified by dimension exactness."""
    alg.validate(x)
    psoc, _ = _special_translates(alg)
    c = psoc.get(alg.canonical_key(x))
    if c is not None:
        routes = sorted(alg.in_routes[c].values())
        summands = []
        for r in routes:
            if len(r) >= 3:
                summands.append(alg.direct_word(r[1:-1]))
            else:
                summands.append(alg.simple(alg.arrow[r[0]].dst))
        return summands, [c]
    tx = ar_translate(alg, x)
    eng = TranslateEngine(alg)
    parts = []
    if not tx.letters:
        # a simple has one extension per living slot of its vertex
        for a in alg.red.arrows:
            if a.src != tx.base:
                continue
            letters = [(a.name, False)]
            eng._complete_descent(letters)
            parts.append(StringWord(base=tx.base, letters=tuple(letters)))
    else:
        for op in (eng.left_op_forward, eng.right_op_forward):
            try:
                piece = op(tx)
            except AmbiguousHook:
                raise StringError("middle terms not computable at this word")
            if piece is not None:
                parts.append(piece)
    total = sum(p.dim for p in parts)
    if total != tx.dim + x.dim:
        raise TranslateMismatch(
            f"middle dimension {total} != {tx.dim} + {x.dim}")
    return parts, []


def mouth_inventory(p: int, q: int, k: int, s: int, theta="theta"
                    ) -> tuple[StringAlgebra, list[MouthModule]]:
    """The (2p+1)k outer and (2q+1)k inner mouth strings of the twisted
    cycle normal form, realized over its reduced presentation."""
    from .fixtures import star_input
    from .presentation import build_omega1, reduce_presentation

    alg = StringAlgebra(reduce_presentation(build_omega1(star_input(p, q, k, s, theta))))
    out: list[MouthModule] = []
    for i in range(1, k + 1):
        out.append(MouthModule("U", f"U({i})", alg.u_word(str(i))))
        for r in range(1, p + 1):
            out.append(MouthModule("S", f"S({i}^{r})", alg.simple(f"{i}^{r}")))
            out.append(MouthModule("P/soc", f"P({i}^{r})/soc",
                                   alg.top_quotient_word(f"{i}^{r}")))
    for i in range(1, k + 1):
        out.append(MouthModule("V", f"V({i})", alg.v_word(str(i))))
        for l in range(1, q + 1):
            out.append(MouthModule("S", f"S({i}_{l})", alg.simple(f"{i}_{l}")))
            out.append(MouthModule("P/soc", f"P({i}_{l})/soc",
                                   alg.top_quotient_word(f"{i}_{l}")))
    return alg, out


def star_string_algebra(p: int, q: int, k: int, s: int, theta="theta") -> StringAlgebra:
    from .fixtures import star_input
    from .presentation import build_omega1, reduce_presentation
    return StringAlgebra(reduce_presentation(build_omega1(star_input(p, q, k, s, theta))))
