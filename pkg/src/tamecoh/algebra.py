"""Quiver path algebras presented by rewriting rules, with exact structure constants.

An algebra instance is built from a quiver and an ordered list of rewrite
rules (monomial left side, linear-combination right side).  Irreducible words
are enumerated breadth-first and taken as the basis; the multiplication table
is filled by reducing concatenations to normal form.  ``validate`` certifies
dimension, identity and associativity, which together confirm that the rule
set was confluent on everything the table touched.

Also here: centers, commutator subspaces, symmetrizing forms, and the
power-map subspaces T_n = {x : x^(p^n) in span of commutators} together with
their orthogonal spaces, all as exact ``Subspace`` values.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import numpy as np

from .field import (
    Field,
    Section,
    Subspace,
    kernel_space,
    matmul,
    matvec,
    pack_vector,
    rank,
    semilinear_kernel,
)


class AlgebraError(Exception):
    pass


class RewriteError(AlgebraError):
    """Reduction exceeded its length cap or step budget."""


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


@dataclass(frozen=True)
class PathWord:
    """A path in the quiver: arrow indices composed left to right."""

    arrows: tuple[int, ...]
    source: int
    target: int

    def __len__(self) -> int:
        return len(self.arrows)


class Quiver:
    def __init__(self, n_vertices: int, arrows, vertex_labels=None):
        self.n_vertices = n_vertices
        self.arrows = []
        self.arrow_index: dict[str, int] = {}
        for name, src, tgt in arrows:
            if not 0 <= src < n_vertices or not 0 <= tgt < n_vertices:
                raise ValueError(f"arrow {name}: endpoint out of range")
            if name in self.arrow_index:
                raise ValueError(f"duplicate arrow name {name!r}")
            self.arrow_index[name] = len(self.arrows)
            self.arrows.append(Arrow(name, src, tgt))
        self.vertex_labels = list(vertex_labels) if vertex_labels else [
            str(v) for v in range(n_vertices)
        ]

    def idempotent_word(self, v: int) -> PathWord:
        return PathWord((), v, v)

    def word(self, *names: str) -> PathWord:
        """Compose named arrows left to right into a path."""
        idxs = tuple(self.arrow_index[n] for n in names)
        return self.word_from_indices(idxs)

    def word_from_indices(self, idxs, source: int | None = None) -> PathWord:
        idxs = tuple(idxs)
        if not idxs:
            if source is None:
                raise ValueError("empty word needs an explicit source vertex")
            return PathWord((), source, source)
        src = self.arrows[idxs[0]].source
        cur = src
        for i in idxs:
            a = self.arrows[i]
            if a.source != cur:
                raise ValueError(
                    f"path not composable at {a.name}: expected source "
                    f"{self.vertex_labels[cur]}, got {self.vertex_labels[a.source]}"
                )
            cur = a.target
        return PathWord(idxs, src, cur)

    def compose(self, w1: PathWord, w2: PathWord) -> PathWord | None:
        if w1.target != w2.source:
            return None
        return PathWord(w1.arrows + w2.arrows, w1.source, w2.target)

    def word_str(self, w: PathWord) -> str:
        if not w.arrows:
            return f"I({self.vertex_labels[w.source]})"
        return "*".join(self.arrows[i].name for i in w.arrows)


class Rule:
    """lhs -> sum of (coeff, word); an empty rhs means the lhs is zero."""

    def __init__(self, quiver: Quiver, field: Field, lhs, rhs=()):
        self.lhs = tuple(lhs)
        if not self.lhs:
            raise ValueError("rule left side must be a nonempty path")
        lw = quiver.word_from_indices(self.lhs)
        self.source, self.target = lw.source, lw.target
        cleaned = []
        for coeff, arrows in rhs:
            c = int(coeff) % field.p if field.m == 1 else int(coeff)
            if c == 0:
                continue
            w = quiver.word_from_indices(tuple(arrows), source=lw.source)
            if (w.source, w.target) != (lw.source, lw.target):
                raise ValueError(
                    f"rule rhs word endpoints ({w.source},{w.target}) differ "
                    f"from lhs endpoints ({lw.source},{lw.target})"
                )
            cleaned.append((c, tuple(arrows)))
        self.rhs = tuple(cleaned)
        self.lhs_len = len(self.lhs)

    @property
    def is_zero(self) -> bool:
        return not self.rhs


class RewriteEngine:
    """Reduces linear combinations of paths with a fixed deterministic strategy.

    The strategy picks the leftmost matching position, and at that position
    the first rule in the stored order (zero rules sort first).  A random
    strategy is available separately so tests can probe confluence.
    """

    def __init__(self, field: Field, quiver: Quiver, rules, length_cap: int,
                 step_limit: int = 2_000_000):
        self.field = field
        self.quiver = quiver
        self.rules = sorted(rules, key=lambda r: 0 if r.is_zero else 1)
        self.length_cap = length_cap
        self.step_limit = step_limit
        self._cache: dict[tuple, tuple] = {}
        self._normal: set[tuple] = set()
        self.max_seen_len = 0

    def find_match(self, w: tuple):
        rules = self.rules
        n = len(w)
        for pos in range(n):
            rest = n - pos
            for ri, rule in enumerate(rules):
                length = rule.lhs_len
                if length <= rest and w[pos : pos + length] == rule.lhs:
                    return pos, ri
        return None

    def is_normal(self, w: tuple) -> bool:
        if w in self._normal:
            return True
        if self.find_match(w) is None:
            self._normal.add(w)
            return True
        return False

    def normal_form_word(self, word) -> dict[tuple, int]:
        word = tuple(word)
        cached = self._cache.get(word)
        if cached is not None:
            return dict(cached)
        f = self.field
        terms: dict[tuple, int] = {word: 1}
        steps = 0
        while True:
            pick = None
            for w in terms:
                if w in self._normal:
                    continue
                known = self._cache.get(w)
                if known is not None:
                    pick = (w, "cached", known)
                    break
                m = self.find_match(w)
                if m is None:
                    self._normal.add(w)
                    continue
                pick = (w, "step", m)
                break
            if pick is None:
                break
            w, kind, data = pick
            c = terms.pop(w)
            if kind == "cached":
                for w2, c2 in data:
                    merged = f.add(terms.get(w2, 0), f.mul(c, c2))
                    if merged:
                        terms[w2] = merged
                    else:
                        terms.pop(w2, None)
                continue
            pos, ri = data
            rule = self.rules[ri]
            for rc, rw in rule.rhs:
                nw = w[:pos] + rw + w[pos + rule.lhs_len :]
                if len(nw) > self.length_cap:
                    raise RewriteError(
                        f"reduction produced a word of length {len(nw)} "
                        f"(cap {self.length_cap}); rules are likely non-terminating"
                    )
                if len(nw) > self.max_seen_len:
                    self.max_seen_len = len(nw)
                merged = f.add(terms.get(nw, 0), f.mul(c, rc))
                if merged:
                    terms[nw] = merged
                else:
                    terms.pop(nw, None)
            steps += 1
            if steps > self.step_limit:
                raise RewriteError(f"step limit {self.step_limit} exceeded")
        result = {w: c for w, c in terms.items() if c}
        self._cache[word] = tuple(result.items())
        return result

    def normal_form_combo(self, terms) -> dict[tuple, int]:
        f = self.field
        out: dict[tuple, int] = {}
        for w, c in (terms.items() if isinstance(terms, dict) else terms):
            if c == 0:
                continue
            for w2, c2 in self.normal_form_word(w).items():
                merged = f.add(out.get(w2, 0), f.mul(c, c2))
                if merged:
                    out[w2] = merged
                else:
                    out.pop(w2, None)
        return out

    def random_strategy_normal_form(self, word, rng) -> dict[tuple, int]:
        """Reduce with randomly chosen redexes; no caching.  For confluence tests."""
        f = self.field
        terms: dict[tuple, int] = {tuple(word): 1}
        steps = 0
        while True:
            candidates = []
            for w in terms:
                n = len(w)
                for pos in range(n):
                    for ri, rule in enumerate(self.rules):
                        length = rule.lhs_len
                        if length <= n - pos and w[pos : pos + length] == rule.lhs:
                            candidates.append((w, pos, ri))
            if not candidates:
                break
            w, pos, ri = candidates[rng.randrange(len(candidates))]
            c = terms.pop(w)
            rule = self.rules[ri]
            for rc, rw in rule.rhs:
                nw = w[:pos] + rw + w[pos + rule.lhs_len :]
                if len(nw) > self.length_cap:
                    raise RewriteError("length cap exceeded under random strategy")
                merged = f.add(terms.get(nw, 0), f.mul(c, rc))
                if merged:
                    terms[nw] = merged
                else:
                    terms.pop(nw, None)
            steps += 1
            if steps > self.step_limit:
                raise RewriteError("step limit exceeded under random strategy")
        return {w: c for w, c in terms.items() if c}


class Algebra:
    """Finite-dimensional quotient of a path algebra, with exact multiplication."""

    def __init__(self, field: Field, quiver: Quiver, rules, name: str = "",
                 expected_dim: int | None = None, length_cap: int | None = None,
                 dim_guard: int = 4000):
        self.field = field
        self.quiver = quiver
        self.name = name
        self.expected_dim = expected_dim
        self.rules = sorted(rules, key=lambda r: 0 if r.is_zero else 1)
        self.dim_guard = dim_guard
        self.basis = self._enumerate_basis()
        self.dim = len(self.basis)
        self.index = {w: i for i, w in enumerate(self.basis)}
        max_len = max((len(w) for w in self.basis), default=1)
        cap = length_cap if length_cap is not None else 6 * max_len + 6
        self.engine = RewriteEngine(field, quiver, self.rules, cap)
        self._table: np.ndarray | None = None
        self._center: Subspace | None = None
        self._commutator: Subspace | None = None

    def _enumerate_basis(self) -> list[PathWord]:
        q = self.quiver
        rules = self.rules
        frontier = [q.idempotent_word(v) for v in range(q.n_vertices)]
        basis = list(frontier)
        while frontier:
            new = []
            for w in frontier:
                for a_idx, arr in enumerate(q.arrows):
                    if arr.source != w.target:
                        continue
                    ext = w.arrows + (a_idx,)
                    n = len(ext)
                    blocked = any(
                        r.lhs_len <= n and ext[n - r.lhs_len :] == r.lhs
                        for r in rules
                    )
                    if not blocked:
                        new.append(PathWord(ext, w.source, arr.target))
            basis.extend(new)
            if len(basis) > self.dim_guard:
                raise AlgebraError(
                    f"basis enumeration passed {self.dim_guard} words; "
                    "the relations do not define a finite-dimensional algebra "
                    "with this orientation"
                )
            frontier = new
        basis.sort(key=lambda w: (len(w.arrows), w.arrows, w.source))
        return basis

    # ---- elements as coefficient vectors over self.basis ----

    def zero(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=np.int64)

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.zero()
        v[i] = 1
        return v

    def one(self) -> np.ndarray:
        v = self.zero()
        for vert in range(self.quiver.n_vertices):
            v[self.index[self.quiver.idempotent_word(vert)]] = 1
        return v

    def idempotent(self, vert: int) -> np.ndarray:
        return self.basis_vector(self.index[self.quiver.idempotent_word(vert)])

    def element(self, terms) -> np.ndarray:
        """Vector of a linear combination of paths, reducing where needed.

        ``terms`` is an iterable of (coeff, PathWord) pairs.
        """
        f = self.field
        out = self.zero()
        for coeff, w in terms:
            c = int(coeff)
            if f.m == 1:
                c %= f.p
            if c == 0:
                continue
            nf = self.engine.normal_form_word(w.arrows)
            for arrows, c2 in nf.items():
                w2 = PathWord(arrows, w.source, w.target)
                idx = self.index.get(w2)
                if idx is None:
                    raise AlgebraError(
                        f"normal form contains non-basis word {self.quiver.word_str(w2)}"
                    )
                out[idx] = f.add(out[idx], f.mul(c, c2))
        return out

    def word_element(self, *names: str) -> np.ndarray:
        w = self.quiver.word(*names)
        return self.element([(1, w)])

    @property
    def table(self) -> np.ndarray:
        if self._table is None:
            n = self.dim
            t = np.zeros((n, n, n), dtype=np.int64)
            for i, wi in enumerate(self.basis):
                for j, wj in enumerate(self.basis):
                    if wi.target != wj.source:
                        continue
                    nf = self.engine.normal_form_word(wi.arrows + wj.arrows)
                    for arrows, c in nf.items():
                        w2 = PathWord(arrows, wi.source, wj.target)
                        idx = self.index.get(w2)
                        if idx is None:
                            raise AlgebraError(
                                f"product {self.quiver.word_str(wi)}*"
                                f"{self.quiver.word_str(wj)} reduced to non-basis "
                                f"word {self.quiver.word_str(w2)}"
                            )
                        t[i, j, idx] = c
            self._table = t
        return self._table

    def multiply(self, u, v) -> np.ndarray:
        t = self.table
        f = self.field
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        if f.m == 1:
            return np.einsum("i,j,ijk->k", u, v, t) % f.p
        out = self.zero()
        for i in np.nonzero(u)[0]:
            ci = int(u[i])
            row = t[i]
            for j in np.nonzero(v)[0]:
                if row[j].any():
                    out = f.add(out, f.mul(f.mul(ci, int(v[j])), row[j]))
        return out

    def power(self, u, e: int) -> np.ndarray:
        if e < 0:
            raise ValueError("negative powers are not defined here")
        acc = self.one()
        base = np.asarray(u, dtype=np.int64)
        while e:
            if e & 1:
                acc = self.multiply(acc, base)
            base = self.multiply(base, base)
            e >>= 1
        return acc

    def commutator(self, u, v) -> np.ndarray:
        return self.field.sub(self.multiply(u, v), self.multiply(v, u))

    def left_mult_matrix(self, u) -> np.ndarray:
        t = self.table
        f = self.field
        u = np.asarray(u, dtype=np.int64)
        if f.m == 1:
            return np.einsum("i,ijk->kj", u, t) % f.p
        out = np.zeros((self.dim, self.dim), dtype=np.int64)
        for i in np.nonzero(u)[0]:
            out = f.add(out, f.mul(int(u[i]), t[i].T))
        return out

    def right_mult_matrix(self, u) -> np.ndarray:
        t = self.table
        f = self.field
        u = np.asarray(u, dtype=np.int64)
        if f.m == 1:
            return np.einsum("j,ijk->ki", u, t) % f.p
        out = np.zeros((self.dim, self.dim), dtype=np.int64)
        for j in np.nonzero(u)[0]:
            out = f.add(out, f.mul(int(u[j]), t[:, j, :].T))
        return out

    # ---- derived structures ----

    def generators(self) -> list[np.ndarray]:
        gens = [self.idempotent(v) for v in range(self.quiver.n_vertices)]
        for a_idx in range(len(self.quiver.arrows)):
            gens.append(self.element([(1, self.quiver.word_from_indices((a_idx,)))]))
        return gens

    def center(self) -> Subspace:
        if self._center is None:
            f = self.field
            conds = []
            for g in self.generators():
                conds.append(f.sub(self.left_mult_matrix(g), self.right_mult_matrix(g)))
            stacked = np.vstack(conds)
            self._center = kernel_space(f, stacked)
        return self._center

    def commutator_space(self) -> Subspace:
        if self._commutator is None:
            t = self.table
            f = self.field
            rows = f.sub(t, np.transpose(t, (1, 0, 2))).reshape(-1, self.dim)
            nz = rows[np.any(rows != 0, axis=1)]
            self._commutator = Subspace(f, self.dim, nz)
        return self._commutator

    def gram_matrix(self, lam) -> np.ndarray:
        """Gram matrix of the bilinear form (u, v) -> lam(u v)."""
        t = self.table
        f = self.field
        lam = np.asarray(lam, dtype=np.int64)
        if f.m == 1:
            return np.einsum("ijk,k->ij", t, lam) % f.p
        out = np.zeros((self.dim, self.dim), dtype=np.int64)
        for k in np.nonzero(lam)[0]:
            out = f.add(out, f.mul(int(lam[k]), t[:, :, k]))
        return out

    def check_symmetrizing(self, lam) -> None:
        g = self.gram_matrix(lam)
        if not np.array_equal(g, g.T):
            raise AlgebraError("form is not symmetric")
        if rank(self.field, g) != self.dim:
            raise AlgebraError("form is degenerate")

    def power_subspace(self, n: int = 1) -> Subspace:
        """T_n = {x : x^(p^n) lies in the span of commutators}, over GF(q).

        The map x -> x^(p^n) is additive modulo commutators and twists scalars
        by the (p^n)-power Frobenius, so T_n is the kernel of a semilinear map
        into A / [A, A].
        """
        f = self.field
        comm = self.commutator_space()
        sec = Section(f, comm)
        e = f.p**n
        cols = []
        for i in range(self.dim):
            pw = self.power(self.basis_vector(i), e)
            cols.append(sec.class_coords(pw))
        mat = np.array(cols, dtype=np.int64).T if cols else np.zeros((0, 0), dtype=np.int64)
        if mat.shape[0] == 0:
            # everything is a commutator; T_n is the whole algebra
            return Subspace(f, self.dim, np.eye(self.dim, dtype=np.int64))
        ker_p = semilinear_kernel(f, mat, n % f.m if f.m > 1 else 0)
        packed = [pack_vector(f, r) for r in ker_p.rows]
        space = Subspace(f, self.dim, packed)
        if f.m * space.dim != ker_p.dim:
            raise AlgebraError("power subspace failed the scalar-closure check")
        return space

    def power_subspace_perp(self, lam, n: int = 1) -> Subspace:
        tn = self.power_subspace(n)
        if tn.dim == 0:
            return Subspace(self.field, self.dim, np.eye(self.dim, dtype=np.int64))
        g = self.gram_matrix(lam)
        return kernel_space(self.field, matmul(self.field, tn.rows, g))

    def stable_center_quotient_dim(self, lam, n: int = 1) -> int:
        """dim of Z(A) / (T_n)^perp for the symmetrizing form lam."""
        z = self.center()
        perp = self.power_subspace_perp(lam, n)
        if not z.contains_space(perp):
            raise AlgebraError("(T_n)^perp is not contained in the center")
        return z.dim - perp.dim

    # ---- validation ----

    def validate(self, rng=None, samples: int = 100_000) -> dict:
        f = self.field
        report = {"dim": self.dim}
        if self.expected_dim is not None and self.dim != self.expected_dim:
            raise AlgebraError(
                f"{self.name or 'algebra'}: dimension {self.dim} != expected {self.expected_dim}"
            )
        one = self.one()
        lm = self.left_mult_matrix(one)
        rm = self.right_mult_matrix(one)
        eye = np.eye(self.dim, dtype=np.int64)
        if not (np.array_equal(lm, eye) and np.array_equal(rm, eye)):
            raise AlgebraError("sum of vertex idempotents is not an identity")
        if self.dim <= 30:
            self._assoc_exhaustive()
            report["associativity"] = "exhaustive"
        else:
            self._assoc_sampled(rng, samples)
            report["associativity"] = f"sampled({samples})"
        return report

    def _assoc_exhaustive(self) -> None:
        t = self.table
        f = self.field
        if f.m == 1:
            left = np.einsum("ijl,lkm->ijkm", t, t) % f.p
            right = np.einsum("jkl,ilm->ijkm", t, t) % f.p
            if not np.array_equal(left, right):
                bad = np.argwhere(np.any(left != right, axis=-1))[0]
                raise AlgebraError(f"associativity fails at basis triple {tuple(bad)}")
            return
        lmats = [self.left_mult_matrix(self.basis_vector(i)) for i in range(self.dim)]
        rmats = [self.right_mult_matrix(self.basis_vector(k)) for k in range(self.dim)]
        for i, k in itertools.product(range(self.dim), repeat=2):
            a = matmul(f, rmats[k], lmats[i])
            b = matmul(f, lmats[i], rmats[k])
            if not np.array_equal(a, b):
                raise AlgebraError(f"associativity fails for (b_{i}, -, b_{k})")

    def _assoc_sampled(self, rng, samples: int) -> None:
        t = self.table
        f = self.field
        n = self.dim
        rng = rng or random.Random(0)
        if f.m == 1:
            chunk = max(1, 1_000_000 // (n * n))
            done = 0
            while done < samples:
                b = min(chunk, samples - done)
                i = np.array([rng.randrange(n) for _ in range(b)])
                j = np.array([rng.randrange(n) for _ in range(b)])
                k = np.array([rng.randrange(n) for _ in range(b)])
                u = t[i, j]  # (b, n)
                left = np.einsum("bl,lbm->bm", u, t[:, k, :]) % f.p
                v = t[j, k]
                right = np.einsum("bl,blm->bm", v, t[i]) % f.p
                if not np.array_equal(left, right):
                    bad = int(np.argwhere(np.any(left != right, axis=-1))[0][0])
                    raise AlgebraError(
                        f"associativity fails at sampled triple "
                        f"({int(i[bad])},{int(j[bad])},{int(k[bad])})"
                    )
                done += b
        else:
            for _ in range(min(samples, 2000)):
                i, j, k = (rng.randrange(n) for _ in range(3))
                u, v, w = (self.basis_vector(x) for x in (i, j, k))
                a = self.multiply(self.multiply(u, v), w)
                b = self.multiply(u, self.multiply(v, w))
                if not np.array_equal(a, b):
                    raise AlgebraError(f"associativity fails at ({i},{j},{k})")

    def format_element(self, vec) -> str:
        f = self.field
        parts = []
        for i in np.nonzero(np.asarray(vec))[0]:
            c = int(vec[i])
            w = self.quiver.word_str(self.basis[i])
            if c == 1:
                parts.append(w)
            else:
                parts.append(f"{f.element_str(c)}*{w}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        label = self.name or "Algebra"
        return f"{label}(dim={self.dim}, {self.field})"
