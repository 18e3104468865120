"""Lie structure on first cohomology and invariants that separate algebras.

The bracket of two degree-one cocycles is computed on arrow values: a
cocycle f is extended to the operator that replaces one arrow occurrence
at a time by f(arrow), and [f, g] evaluates that extension of f on the
values of g minus the extension of g on the values of f.  On classes this
is the Gerstenhaber bracket, and the result of pairing a chosen basis of
classes is a finite-dimensional Lie algebra over the ground field.

The second half of the module works with such Lie algebras abstractly
(structure constants over GF(p^m)): lower central and derived series,
centre, Killing form, the largest nilpotent ideal, and spaces of
(lam, mu, nu)-derivations.  A fingerprint bundles the invariants so two
algebras can be compared, and ``distinguish`` names the first invariant
that differs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import Algebra, AlgebraError
from .cohomology import CohomologySpace, _fkron, hh
from .field import (
    Field,
    Section,
    Subspace,
    inverse,
    kernel_space,
    matmul,
    matvec,
    rank,
)
from .fixtures import FIXTURE_FAMILIES, FixtureSet, fixtures_for
from .resolution import ResolutionSpec

_SUPERSCRIPTS = str.maketrans("0123456789", "⁰¹²³⁴"
                              "⁵⁶⁷⁸⁹")


def _sup(n: int) -> str:
    return str(n).translate(_SUPERSCRIPTS)


# ---------------------------------------------------------------------------
# the bracket on degree-one cochains
# ---------------------------------------------------------------------------


def xi_extend(alg: Algebra, values, elem) -> np.ndarray:
    """Apply the arrow-replacement extension of a cochain to an element.

    ``values[j]`` is the image of arrow j.  A basis word maps to the sum
    over its arrow positions of (prefix) value (suffix); idempotent words
    map to zero.  The extension is a derivation of the algebra precisely
    when the cochain is a cocycle.
    """
    f = alg.field
    q = alg.quiver
    elem = np.asarray(elem, dtype=np.int64)
    acc = alg.zero()
    for i in np.nonzero(elem)[0]:
        w = alg.basis[i]
        arrows = w.arrows
        coeff = int(elem[i])
        for pos, aj in enumerate(arrows):
            pre = alg.element(
                [(1, q.word_from_indices(arrows[:pos], source=w.source))])
            post = alg.element(
                [(1, q.word_from_indices(arrows[pos + 1:],
                                         source=q.arrows[aj].target))])
            term = alg.multiply(alg.multiply(pre, values[aj]), post)
            acc = f.add(acc, f.mul(coeff, term))
    return acc


def bracket(resolution: ResolutionSpec, u, v, check: bool = True) -> np.ndarray:
    """Gerstenhaber bracket of two degree-one cocycle vectors.

    Both inputs must be cocycles (checked against the second induced
    matrix unless ``check`` is off); the output is again a cocycle.
    """
    alg = resolution.algebra
    f = alg.field
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    m2 = resolution.induced_matrix(2)
    if check:
        for w in (u, v):
            if np.any(matvec(f, m2, w)):
                raise AlgebraError("not a cocycle")
    uvals = resolution.unpack_cochain(1, u)
    vvals = resolution.unpack_cochain(1, v)
    out = [f.sub(xi_extend(alg, uvals, vvals[j]),
                 xi_extend(alg, vvals, uvals[j]))
           for j in range(len(uvals))]
    res = resolution.pack_cochain(1, out)
    if check and np.any(matvec(f, m2, res)):
        raise AlgebraError("bracket of cocycles failed to be a cocycle")
    return res


def class_bracket(space: CohomologySpace, u, v) -> np.ndarray:
    """Class coordinates of the bracket of two cocycle vectors."""
    return space.class_coords(bracket(space.resolution, u, v))


# ---------------------------------------------------------------------------
# finite-dimensional Lie algebras by structure constants
# ---------------------------------------------------------------------------


class LieAlgebra:
    """Lie algebra over GF(p^m) given by structure constants.

    ``structure[i, j, :]`` holds [e_i, e_j] in basis coordinates.  The
    constructor verifies alternation and the Jacobi identity unless
    ``check`` is disabled.
    """

    def __init__(self, field: Field, structure, names=None, check: bool = True):
        self.field = field
        self.structure = np.asarray(structure, dtype=np.int64)
        n = self.structure.shape[0]
        if self.structure.shape != (n, n, n):
            raise AlgebraError(
                f"structure constants must be cubic, got {self.structure.shape}")
        self.dim = n
        if names is not None:
            names = tuple(names)
            if len(names) != n:
                raise AlgebraError("one name per basis element required")
        self.names = names
        if check:
            self._check_axioms()

    # ---- construction helpers ----

    @classmethod
    def from_entries(cls, field: Field, dim: int, entries, names=None,
                     check: bool = True) -> "LieAlgebra":
        """Build from sparse entries [i, j, k, coeff] meaning [e_i,e_j] has
        coefficient coeff on e_k."""
        s = np.zeros((dim, dim, dim), dtype=np.int64)
        for i, j, k, coeff in entries:
            s[int(i), int(j), int(k)] = int(coeff)
        return cls(field, s, names=names, check=check)

    def to_entries(self) -> list:
        out = []
        for i, j, k in zip(*np.nonzero(self.structure)):
            out.append([int(i), int(j), int(k), int(self.structure[i, j, k])])
        return out

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "field": {"p": self.field.p, "m": self.field.m},
            "entries": self.to_entries(),
            "names": list(self.names) if self.names is not None else None,
        }

    @classmethod
    def from_dict(cls, data: dict, check: bool = True) -> "LieAlgebra":
        f = Field(int(data["field"]["p"]), int(data["field"]["m"]))
        return cls.from_entries(f, int(data["dim"]), data["entries"],
                                names=data.get("names"), check=check)

    # ---- the bracket and adjoint maps ----

    def bracket(self, u, v) -> np.ndarray:
        f = self.field
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        out = np.zeros(self.dim, dtype=np.int64)
        for i in np.nonzero(u)[0]:
            row = self.structure[i]
            for j in np.nonzero(v)[0]:
                coeff = f.mul(int(u[i]), int(v[j]))
                out = f.add(out, f.mul(coeff, row[j]))
        return out

    def ad(self, u) -> np.ndarray:
        """Matrix of x -> [u, x]."""
        f = self.field
        u = np.asarray(u, dtype=np.int64)
        out = np.zeros((self.dim, self.dim), dtype=np.int64)
        for i in np.nonzero(u)[0]:
            out = f.add(out, f.mul(int(u[i]), self.structure[i].T))
        return out

    def basis_vector(self, i: int) -> np.ndarray:
        e = np.zeros(self.dim, dtype=np.int64)
        e[i] = 1
        return e

    def full_space(self) -> Subspace:
        return Subspace(self.field, self.dim, np.eye(self.dim, dtype=np.int64))

    def _check_axioms(self) -> None:
        f = self.field
        n = self.dim
        s = self.structure
        for i in range(n):
            if np.any(s[i, i]):
                raise AlgebraError(f"[e_{i}, e_{i}] is not zero")
        for i in range(n):
            for j in range(i + 1, n):
                if not np.array_equal(s[i, j], f.neg(s[j, i])):
                    raise AlgebraError(f"bracket not antisymmetric at ({i},{j})")
        for i in range(n):
            for j in range(i + 1, n):
                sij = s[i, j]
                for k in range(j + 1, n):
                    acc = self.bracket(sij, self.basis_vector(k))
                    acc = f.add(acc, self.bracket(s[j, k], self.basis_vector(i)))
                    acc = f.add(acc, self.bracket(s[k, i], self.basis_vector(j)))
                    if np.any(acc):
                        raise AlgebraError(
                            f"Jacobi identity fails on ({i},{j},{k})")

    # ---- subspace machinery ----

    def bracket_space(self, a: Subspace, b: Subspace) -> Subspace:
        vecs = [self.bracket(x, y) for x in a.rows for y in b.rows]
        return Subspace(self.field, self.dim, vecs)

    def ideal_closure(self, sub: Subspace) -> Subspace:
        full = self.full_space()
        cur = sub
        while True:
            nxt = cur.sum(self.bracket_space(full, cur))
            if nxt == cur:
                return cur
            cur = nxt

    def is_ideal(self, sub: Subspace) -> bool:
        return sub.contains_space(self.bracket_space(self.full_space(), sub))

    def lower_central_series(self) -> list:
        """[L, L^1, L^2, ...] with L^(i+1) = [L^i, L], until stable."""
        full = self.full_space()
        series = [full]
        while series[-1].dim:
            nxt = self.bracket_space(series[-1], full)
            if nxt == series[-1]:
                break
            series.append(nxt)
        return series

    def derived_series(self) -> list:
        """[L, D^1, D^2, ...] with D^(i+1) = [D^i, D^i], until stable."""
        series = [self.full_space()]
        while series[-1].dim:
            nxt = self.bracket_space(series[-1], series[-1])
            if nxt == series[-1]:
                break
            series.append(nxt)
        return series

    def is_nilpotent(self) -> bool:
        return self.lower_central_series()[-1].dim == 0

    def centre(self) -> Subspace:
        # v is central iff sum_i v_i structure[i, j, :] = 0 for every j
        mat = self.structure.transpose(1, 2, 0).reshape(self.dim ** 2, self.dim)
        return kernel_space(self.field, mat)

    def subspace_nilpotent(self, sub: Subspace) -> bool:
        """Whether a subalgebra is nilpotent (its own lower central series).

        ``sub`` must be closed under the bracket; the series then descends
        and either reaches zero or stabilizes at a nonzero term.
        """
        if not sub.contains_space(self.bracket_space(sub, sub)):
            raise AlgebraError("not a subalgebra")
        term = sub
        while term.dim:
            nxt = self.bracket_space(sub, term)
            if nxt == term:
                return False
            term = nxt
        return True

    # ---- invariants ----

    def killing_matrix(self) -> np.ndarray:
        f = self.field
        ads = [self.ad(self.basis_vector(i)) for i in range(self.dim)]
        k_mat = np.zeros((self.dim, self.dim), dtype=np.int64)
        for i in range(self.dim):
            for j in range(i, self.dim):
                prod = matmul(f, ads[i], ads[j])
                tr = 0
                for t in range(self.dim):
                    tr = f.add(tr, int(prod[t, t]))
                k_mat[i, j] = tr
                k_mat[j, i] = tr
        return k_mat

    def killing_rank(self) -> int:
        return rank(self.field, self.killing_matrix())

    def nilradical(self, limit: int = 10 ** 6):
        """The largest nilpotent ideal, or None when out of budget.

        Grows a nilpotent ideal greedily from basis vectors, then certifies
        maximality by trying one representative of every line of the
        quotient: a strictly larger nilpotent ideal would contain the
        current one plus some coset, and the single-element extension it
        generates is again a nilpotent ideal.  When the quotient has more
        than ``limit`` lines the answer is left undetermined.
        """
        f = self.field
        n = self.dim
        q_size = f.p ** f.m
        ideal = Subspace(f, n)
        for i in range(n):
            e = self.basis_vector(i)
            if ideal.contains(e):
                continue
            cand = self.ideal_closure(ideal.sum(Subspace(f, n, [e])))
            if self.subspace_nilpotent(cand):
                ideal = cand
        while True:
            codim = n - ideal.dim
            if codim == 0:
                return ideal
            lines = (q_size ** codim - 1) // (q_size - 1)
            if lines > limit:
                return None
            sec = Section(f, ideal)
            grown = None
            for coords in _projective_reps(f, codim):
                u = sec.lift(coords)
                cand = self.ideal_closure(ideal.sum(Subspace(f, n, [u])))
                if self.subspace_nilpotent(cand):
                    grown = cand
                    break
            if grown is None:
                return ideal
            ideal = grown

    def gen_derivations(self, lam, mu, nu) -> Subspace:
        """Space of (lam, mu, nu)-derivations, as flattened matrices.

        D qualifies when lam D[x,y] = mu [Dx,y] + nu [x,Dy] for all x, y.
        The flattening is row-major: entry m*dim + c of a solution vector
        is D[m, c].
        """
        f = self.field
        n = self.dim
        if lam == 0 and mu == 0 and nu == 0:
            raise AlgebraError("(0, 0, 0) does not constrain anything")
        eye = np.eye(n, dtype=np.int64)
        ads = [self.ad(self.basis_vector(i)) for i in range(n)]
        blocks = []
        for i in range(n):
            for j in range(n):
                w = self.structure[i, j]
                block = f.mul(lam, _fkron(f, eye, w[None, :]))
                block = f.add(block, f.mul(mu, _fkron(f, ads[j],
                                                      eye[i][None, :])))
                block = f.sub(block, f.mul(nu, _fkron(f, ads[i],
                                                      eye[j][None, :])))
                blocks.append(block)
        system = np.vstack(blocks)
        return kernel_space(f, system)

    def derivation_dim(self, rho) -> int:
        """dim of the (rho, 1, 1)-derivation space."""
        return self.gen_derivations(rho, 1, 1).dim

    # ---- quotients and base change ----

    def quotient(self, ideal: Subspace):
        """Quotient by an ideal: (LieAlgebra, Section onto the classes)."""
        if not self.is_ideal(ideal):
            raise AlgebraError("quotient requires an ideal")
        f = self.field
        sec = Section(f, ideal)
        qdim = sec.dim
        lifts = [sec.lift(_unit(qdim, a)) for a in range(qdim)]
        s = np.zeros((qdim, qdim, qdim), dtype=np.int64)
        for a in range(qdim):
            for b in range(qdim):
                s[a, b] = sec.class_coords(self.bracket(lifts[a], lifts[b]))
        return LieAlgebra(f, s, check=False), sec

    def conjugate(self, mat, check: bool = True) -> "LieAlgebra":
        """Structure constants in the basis whose columns are ``mat``."""
        f = self.field
        mat = np.asarray(mat, dtype=np.int64)
        minv = inverse(f, mat)
        n = self.dim
        s = np.zeros((n, n, n), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                val = self.bracket(mat[:, i], mat[:, j])
                s[i, j] = matvec(f, minv, val)
        return LieAlgebra(f, s, check=check)

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim}, field={self.field})"


def _unit(n: int, i: int) -> np.ndarray:
    e = np.zeros(n, dtype=np.int64)
    e[i] = 1
    return e


def _projective_reps(f: Field, dim: int):
    """One coordinate vector per line of F^dim: first nonzero entry is 1."""
    codes = list(f.elements())
    for lead in range(dim):
        for tail in itertools.product(codes, repeat=dim - lead - 1):
            v = np.zeros(dim, dtype=np.int64)
            v[lead] = 1
            v[lead + 1:] = tail
            yield v


def verify_iso(l1: LieAlgebra, l2: LieAlgebra, mat) -> bool:
    """Whether the invertible matrix mat intertwines the two brackets."""
    if l1.dim != l2.dim or l1.field != l2.field:
        return False
    f = l1.field
    mat = np.asarray(mat, dtype=np.int64)
    try:
        inverse(f, mat)
    except ValueError:
        return False
    for i in range(l1.dim):
        for j in range(i + 1, l1.dim):
            lhs = matvec(f, mat, l1.structure[i, j])
            rhs = l2.bracket(mat[:, i], mat[:, j])
            if not np.array_equal(lhs, rhs):
                return False
    return True


# ---------------------------------------------------------------------------
# from cohomology to a Lie algebra
# ---------------------------------------------------------------------------


def from_cohomology(space: CohomologySpace, fix: FixtureSet | None = None,
                    check: bool = True) -> LieAlgebra:
    """Lie algebra of a degree-one cohomology space.

    Without a fixture set the basis is the canonical one of the class
    section.  With one, the named cochains of ``fix.basis`` are used; they
    must be cocycles whose classes really form a basis.
    """
    if space.degree != 1:
        raise AlgebraError("Lie structure lives in degree one")
    f = space.algebra.field
    n = space.dim
    if fix is None:
        reps = space.representatives()
        names = None
        coord = space.class_coords
    else:
        names = tuple(fix.basis)
        reps = [fix.vec(nm) for nm in names]
        if len(reps) != n:
            raise AlgebraError(
                f"fixture basis has {len(reps)} elements, cohomology has dim {n}")
        p_mat = np.zeros((n, n), dtype=np.int64)
        for j, vec in enumerate(reps):
            p_mat[:, j] = space.class_coords(vec)
        try:
            p_inv = inverse(f, p_mat)
        except ValueError:
            raise AlgebraError("fixture classes do not form a basis") from None

        def coord(v, _pi=p_inv):
            return matvec(f, _pi, space.class_coords(v))

    s = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            val = coord(bracket(space.resolution, reps[i], reps[j],
                                check=False))
            s[i, j] = val
            s[j, i] = f.neg(val)
    return LieAlgebra(f, s, names=names, check=check)


def hh1_lie(inst, named: bool = True, check: bool = True) -> LieAlgebra:
    """First-cohomology Lie algebra of a family instance.

    ``named`` asks for the catalogued basis when the family has one;
    families without a catalogue fall back to the canonical basis.
    """
    if inst.resolution is None:
        raise AlgebraError(f"{inst.algebra.name} carries no bimodule complex")
    space = hh(inst.resolution, 1)
    fix = None
    if named and inst.family in FIXTURE_FAMILIES:
        fix = fixtures_for(inst)
    return from_cohomology(space, fix, check=check)


def check_bracket_table(space: CohomologySpace, fix: FixtureSet) -> dict:
    """Compare computed brackets of basis cochains with the expected table.

    The table lists each pair once; the transposed pair is held to the
    negated combination, and pairs absent in both orientations must
    bracket to zero modulo coboundaries.  Diagonal pairs vanish
    identically and are skipped.
    """
    f = fix.field
    entries = []
    ok = True
    for a in fix.basis:
        for b in fix.basis:
            if a == b:
                continue
            computed = bracket(space.resolution, fix.vec(a), fix.vec(b))
            if (a, b) in fix.brackets:
                expected = fix.vec(fix.brackets[(a, b)])
            elif (b, a) in fix.brackets:
                expected = f.neg(fix.vec(fix.brackets[(b, a)]))
            else:
                expected = fix.vec({})
            good = space.same_class(computed, expected)
            ok &= bool(good)
            entries.append((a, b, bool(good)))
    return {"passed": ok, "entries": entries}


# ---------------------------------------------------------------------------
# diagonal models and derivation probes
# ---------------------------------------------------------------------------


def diagonal_model(field: Field, nus) -> LieAlgebra:
    """Lie algebra on e_0..e_r with [e_0, e_i] = nu_i e_i and no other
    brackets; nus holds field codes (nu_1, ..., nu_r)."""
    r = len(nus)
    n = r + 1
    s = np.zeros((n, n, n), dtype=np.int64)
    for i, nu in enumerate(nus, start=1):
        s[0, i, i] = int(nu)
        s[i, 0, i] = field.neg(int(nu))
    return LieAlgebra(field, s)


def derivation_probes(field: Field, *nu_vectors) -> list:
    """Candidate rho values at which (rho,1,1)-derivation spaces can jump.

    The derivation count of a diagonal model changes only when rho equals
    a ratio of two nonzero weights, so scanning these ratios plus 1 covers
    every value at which two models can disagree.
    """
    probes = {field.embed(1)}
    for nus in nu_vectors:
        nonzero = [int(x) for x in nus if int(x) != 0]
        for a in nonzero:
            for b in nonzero:
                probes.add(field.mul(b, field.inv(a)))
    return sorted(probes)


def second_derived_weights(field: Field, k: int, s: int) -> tuple:
    """Diagonal weights (s, 2s, k, 2k, *) of the two quotient models at
    (k, s): one with tail 2ks - k - s, one with tail 2ks/3."""
    three = field.embed(3)
    if three == 0:
        raise AlgebraError("weights need 3 invertible in the field")
    base = tuple(field.embed(x) for x in (s, 2 * s, k, 2 * k))
    tail_a = field.embed(2 * k * s - k - s)
    tail_b = field.mul(field.embed(2 * k * s), field.inv(three))
    return base + (tail_a,), base + (tail_b,)


# ---------------------------------------------------------------------------
# fingerprints
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Fingerprint:
    """Invariants of one Lie algebra, in a comparable bundle."""

    dim: int
    lower_central_dims: tuple
    derived_dims: tuple
    centre_dim: int
    killing_rank: int
    nilpotent: bool
    nilradical_dim: int | None
    derivation_dims: tuple


def fingerprint(lie: LieAlgebra, probes=(), nilradical_limit: int = 10 ** 6
                ) -> Fingerprint:
    lower = tuple(s.dim for s in lie.lower_central_series()[1:])
    derived = tuple(s.dim for s in lie.derived_series()[1:])
    nilrad = lie.nilradical(limit=nilradical_limit)
    der_dims = tuple((int(rho), lie.derivation_dim(rho)) for rho in probes)
    return Fingerprint(
        dim=lie.dim,
        lower_central_dims=lower,
        derived_dims=derived,
        centre_dim=lie.centre().dim,
        killing_rank=lie.killing_rank(),
        nilpotent=lie.is_nilpotent(),
        nilradical_dim=None if nilrad is None else nilrad.dim,
        derivation_dims=der_dims,
    )


def _padded(a: tuple, b: tuple) -> list:
    """Align two stabilized dim sequences by repeating the last value."""
    length = max(len(a), len(b), 1)
    pa = list(a) + [a[-1] if a else 0] * (length - len(a))
    pb = list(b) + [b[-1] if b else 0] * (length - len(b))
    return list(zip(pa, pb))


def distinguish(fp1: Fingerprint, fp2: Fingerprint, dim_label: str = "dim"
                ) -> str:
    """Name the first invariant separating the fingerprints.

    Returns "distinguished by <label> (<a> vs <b>)" or "inconclusive".
    Series entries are labelled dim L{i} / dim D{i} with superscript
    indices; an undetermined nilradical on either side is skipped.
    """
    checks = [(dim_label, fp1.dim, fp2.dim)]
    for idx, (a, b) in enumerate(_padded(fp1.lower_central_dims,
                                         fp2.lower_central_dims), start=1):
        checks.append((f"dim L{_sup(idx)}", a, b))
    for idx, (a, b) in enumerate(_padded(fp1.derived_dims,
                                         fp2.derived_dims), start=1):
        checks.append((f"dim D{_sup(idx)}", a, b))
    checks.append(("dim centre", fp1.centre_dim, fp2.centre_dim))
    checks.append(("Killing rank", fp1.killing_rank, fp2.killing_rank))
    checks.append(("nilpotency", fp1.nilpotent, fp2.nilpotent))
    if fp1.nilradical_dim is not None and fp2.nilradical_dim is not None:
        checks.append(("dim nilradical", fp1.nilradical_dim,
                       fp2.nilradical_dim))
    probes2 = dict(fp2.derivation_dims)
    for rho, d1 in fp1.derivation_dims:
        if rho in probes2:
            checks.append((f"dim der(rho={rho})", d1, probes2[rho]))
    for label, a, b in checks:
        if a != b:
            return f"distinguished by {label} ({a} vs {b})"
    return "inconclusive"
