"""Graded comodules over a truncated Hopf algebroid.

A comodule is carried by a quotient (possibly localized) coefficient ring of
the base; its coaction is recorded on generators with all base coefficients
pushed into the Gamma side. Validation, the descent-datum dictionary,
primitives, finitely generated subcomodules and locality tests all run
degreewise inside a finite window, and every verdict says so.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    InvalidCoaction,
    InvalidCocycle,
    Undecidable,
    WindowExceeded,
)
from .hopf import HopfAlgebroidSpec, TensorElement, quotient_hopf_algebroid
from .intlinalg import IntMatrix, kernel_basis_field, kernel_basis_int, solve_int
from .rings import GradedRingSpec, Poly, format_poly
from .scalars import Domain


@dataclass
class GradedComodule:
    """Module data over H.A/(rels) with a coaction into Gamma (x) M."""

    H: HopfAlgebroidSpec            # ambient algebroid
    HM: HopfAlgebroidSpec           # quotient algebroid acting on M
    gens: tuple                     # ((name, degree), ...)
    coaction: dict                  # gen -> {gen2 -> Poly in HM.Gamma}
    window: tuple                   # (lo, hi)
    label: str = ""
    embedding: dict | None = None   # gen -> element of `ambient`, for submodules
    ambient: "GradedComodule | None" = None

    # -- element plumbing; an element is {gen name: Poly in HM.A} ----------------

    @property
    def gen_degrees(self) -> dict:
        return {name: d for name, d in self.gens}

    def zero_element(self) -> dict:
        return {}

    def element_degree(self, elt):
        degs = {self.gen_degrees[g] + p.degree() for g, p in elt.items() if not p.is_zero()}
        if len(degs) > 1:
            raise ValueError("inhomogeneous element")
        return degs.pop() if degs else None

    def psi(self, elt: dict) -> dict:
        """Coaction on an element; result maps gen -> Poly in Gamma."""
        out: dict = {}
        for g, a in elt.items():
            a_up = self.HM.a_to_gamma(a)
            for g2, gamma in self.coaction[g].items():
                acc = out.get(g2, self.HM.Gamma.zero()) + a_up * gamma
                if acc.is_zero():
                    out.pop(g2, None)
                else:
                    out[g2] = acc
        return out

    def one_tensor(self, elt: dict) -> dict:
        """1 (x) m in the same normal form (coefficients cross via eta_R)."""
        out = {}
        for g, a in elt.items():
            img = self.HM.eta_R(a)
            if not img.is_zero():
                out[g] = img
        return out

    def monomial_elements(self, degree: int):
        """Basis elements of M in one degree: (gen, base monomial exponent)."""
        out = []
        for name, d in self.gens:
            piece = self.HM.A.graded_piece(degree - d)
            if piece is None:
                raise Undecidable(f"infinite-rank graded piece at degree {degree}")
            out.extend((name, e) for e in piece)
        return out

    def gamma_tensor_basis(self, degree: int):
        """Monomial basis of (Gamma (x) M) in one degree: (gen, Gamma exponent)."""
        out = []
        for name, d in self.gens:
            piece = self.HM.Gamma.graded_piece(degree - d)
            if piece is None:
                raise Undecidable(f"infinite-rank graded piece at degree {degree}")
            out.extend((name, e) for e in piece)
        return out


def quotient_comodule(H: HopfAlgebroidSpec, rels, window, shift: int = 0,
                      gen_name: str = "e", label: str = "") -> GradedComodule:
    """The cyclic comodule A/(rels) with coaction e -> 1 (x) e, shifted."""
    HM = quotient_hopf_algebroid(H, rels) if rels else H
    coaction = {gen_name: {gen_name: HM.Gamma.one()}}
    return GradedComodule(H, HM, ((gen_name, shift),), coaction, tuple(window),
                          label=label or f"A/({', '.join(map(str, rels))})"
                          + (f" shifted by {shift}" if shift else ""))


def trivial_comodule(H: HopfAlgebroidSpec, window) -> GradedComodule:
    return quotient_comodule(H, [], window, label="A (trivial comodule)")


def suspend(M: GradedComodule, d: int) -> GradedComodule:
    gens = tuple((name, deg + d) for name, deg in M.gens)
    return GradedComodule(M.H, M.HM, gens, M.coaction,
                          (M.window[0] + d, M.window[1] + d),
                          label=f"{M.label} suspended by {d}",
                          embedding=M.embedding, ambient=M.ambient)


# -- validation ----------------------------------------------------------------


@dataclass(frozen=True)
class ComoduleReport:
    checks: tuple  # (axiom, generator, ok, residual string)

    @property
    def passed(self):
        return all(ok for _, _, ok, _ in self.checks)

    def failures(self):
        return [c for c in self.checks if not c[2]]

    def __str__(self):
        return "\n".join(f"{'PASS' if ok else 'FAIL'}  {a} @ {g}" + ("" if ok else f": {r}")
                         for a, g, ok, r in self.checks)


def _counit_defect(M: GradedComodule, gen: str) -> dict:
    out = {}
    for g2, gamma in M.coaction[gen].items():
        a = M.HM.eps(gamma)
        if not a.is_zero():
            out[g2] = a
    one = out.get(gen, M.HM.A.zero()) - M.HM.A.one()
    if one.is_zero():
        out.pop(gen, None)
    else:
        out[gen] = one
    return {g: a for g, a in out.items() if not a.is_zero()}


def _coassoc_defect(M: GradedComodule, gen: str) -> dict:
    left: dict = {}
    for g2, gamma in M.coaction[gen].items():
        d = M.HM.delta(gamma)
        left[g2] = left.get(g2, TensorElement.zero(M.HM, 2)) + d
    right: dict = {}
    for g2, gamma in M.coaction[gen].items():
        for g3, gamma2 in M.coaction[g2].items():
            t = TensorElement.from_factors(M.HM, [gamma, gamma2])
            right[g3] = right.get(g3, TensorElement.zero(M.HM, 2)) + t
    defect = {}
    for g in set(left) | set(right):
        diff = left.get(g, TensorElement.zero(M.HM, 2)) - right.get(g, TensorElement.zero(M.HM, 2))
        if not diff.is_zero():
            defect[g] = diff
    return defect


def _element_is_zero(M: GradedComodule, elt: dict) -> bool:
    elt = {g: a for g, a in elt.items() if not a.is_zero()}
    if not elt:
        return True
    if M.embedding is None:
        return False
    # submodule: zero-test through the ambient presentation
    image: dict = {}
    for g, a in elt.items():
        for g2, b in M.embedding[g].items():
            acc = image.get(g2, M.HM.A.zero()) + a * b
            image[g2] = acc
    return all(v.is_zero() for v in image.values())


def validate_comodule(M: GradedComodule) -> ComoduleReport:
    """Counit and coassociativity on every generator, inside the window."""
    checks = []
    for name, _ in M.gens:
        defect = _counit_defect(M, name)
        ok = _element_is_zero(M, defect)
        checks.append(("counit", name, ok,
                       "" if ok else "; ".join(f"{g}: {format_poly(a)}" for g, a in defect.items())))
        defect2 = _coassoc_defect(M, name)
        ok2 = all(t.is_zero() for t in defect2.values()) or _submodule_tensor_zero(M, defect2)
        checks.append(("coassociativity", name, ok2,
                       "" if ok2 else "; ".join(f"{g}: {t!r}" for g, t in defect2.items())))
    return ComoduleReport(tuple(checks))


def _submodule_tensor_zero(M: GradedComodule, defect: dict) -> bool:
    if M.embedding is None:
        return False
    out: dict = {}
    for g, tens in defect.items():
        emb = M.embedding[g]
        for g2, b in emb.items():
            # push the base coefficient through the right unit on the last factor
            add = TensorElement(M.HM, 2, _push_right_coeff(M.HM, tens, b))
            out[g2] = out.get(g2, TensorElement.zero(M.HM, 2)) + add
    return all(t.is_zero() for t in out.values())


def _push_right_coeff(HM: HopfAlgebroidSpec, tens: TensorElement, b: Poly) -> dict:
    img = HM.eta_R(b)
    out: dict = {}
    for (l, r), c in tens.terms.items():
        for e, q in img.terms.items():
            key = (l, tuple(x + y for x, y in zip(r, e)))
            out[key] = out.get(key, 0) + c * q
    return out


# -- descent data ------------------------------------------------------------------


@dataclass
class DescentDatum:
    """Same carrier as a comodule; alpha(1 (x) m) recorded on generators."""

    H: HopfAlgebroidSpec
    HM: HopfAlgebroidSpec
    gens: tuple
    alpha: dict
    window: tuple
    label: str = ""

    def as_comodule(self) -> GradedComodule:
        return GradedComodule(self.H, self.HM, self.gens, self.alpha, self.window,
                              label=self.label)


def descent_from_comodule(M: GradedComodule) -> DescentDatum:
    report = validate_comodule(M)
    if not report.passed:
        raise InvalidCoaction(str(report))
    return DescentDatum(M.H, M.HM, M.gens, M.coaction, M.window, label=M.label)


def comodule_from_descent(D: DescentDatum) -> GradedComodule:
    M = D.as_comodule()
    # cocycle condition = coassociativity of the candidate coaction
    for name, _ in D.gens:
        defect = _coassoc_defect(M, name)
        if not all(t.is_zero() for t in defect.values()):
            raise InvalidCocycle(f"cocycle fails at {name}")
    # degreewise invertibility: the antipode twist is a two-sided inverse
    for name, _ in D.gens:
        if not _alpha_invertible_on(M, name):
            raise InvalidCocycle(f"alpha is not invertible at {name}")
    report = validate_comodule(M)
    if not report.passed:
        raise InvalidCoaction(str(report))
    return M


def _alpha_invertible_on(M: GradedComodule, gen: str) -> bool:
    """Check (c (x) id)-twisted coaction inverts alpha on a generator."""
    HM = M.HM
    total: dict = {}
    for g2, gamma in M.coaction[gen].items():
        for g3, gamma2 in M.coaction[g2].items():
            add = gamma * HM.antipode(gamma2)
            acc = total.get(g3, HM.Gamma.zero()) + add
            total[g3] = acc
    expected = {gen: HM.Gamma.one()}
    keys = set(total) | set(expected)
    return all((total.get(k, HM.Gamma.zero()) - expected.get(k, HM.Gamma.zero())).is_zero()
               for k in keys)


# -- primitives ----------------------------------------------------------------------


def primitives(M: GradedComodule, window=None) -> dict:
    """Per degree, an exact basis of {m : psi(m) = 1 (x) m}."""
    lo, hi = window or M.window
    if lo < M.window[0] or hi > M.window[1]:
        raise WindowExceeded("primitives window exceeds the comodule window")
    out: dict = {}
    for t in range(lo, hi + 1):
        basis = M.monomial_elements(t)
        if not basis:
            continue
        tensor_basis = M.gamma_tensor_basis(t)
        index = {bk: i for i, bk in enumerate(tensor_basis)}
        cols = []
        for g, e in basis:
            elt = {g: Poly(M.HM.A, {e: Fraction(1)})}
            diff_map = M.psi(elt)
            one_map = M.one_tensor(elt)
            col = [Fraction(0)] * len(tensor_basis)
            for g2 in set(diff_map) | set(one_map):
                poly = diff_map.get(g2, M.HM.Gamma.zero()) - one_map.get(g2, M.HM.Gamma.zero())
                for e2, c in poly.terms.items():
                    col[index[(g2, e2)]] += c
            cols.append(col)
        rows = [[cols[j][i] for j in range(len(cols))] for i in range(len(tensor_basis))]
        dom = M.HM.Gamma.effective_domain
        if dom.kind == "Fp":
            kern = kernel_basis_field([[int(x) for x in row] for row in rows], dom)
        elif not rows:
            kern = [tuple(1 if i == j else 0 for i in range(len(cols)))
                    for j in range(len(cols))]
        else:
            denom = 1
            for row in rows:
                for x in row:
                    denom = denom * x.denominator // _gcd(denom, x.denominator)
            int_rows = [[int(x * denom) for x in row] for row in rows]
            kern = kernel_basis_int(IntMatrix.make(int_rows))
        if kern:
            out[t] = [_combine(M, basis, vec) for vec in kern]
    return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _combine(M, basis, vec):
    elt: dict = {}
    for (g, e), c in zip(basis, vec):
        if c:
            elt[g] = elt.get(g, M.HM.A.zero()) + Poly(M.HM.A, {e: Fraction(c)})
    return elt


def format_element(M: GradedComodule, elt: dict) -> str:
    bits = [f"({format_poly(a)})*{g}" for g, a in sorted(elt.items())]
    return " + ".join(bits) if bits else "0"


# -- finitely generated subcomodules -----------------------------------------------------


def coaction_coordinates(M: GradedComodule, elt: dict) -> list:
    """The M-coordinates of psi(elt) in the coideal-monomial decomposition
    Gamma (x) M = sum over tau of tau (x) M, via right coordinates."""
    from .hopf import right_coordinates
    by_tmono: dict = {}
    for g, gamma in M.psi(elt).items():
        for t_exp, r in right_coordinates(M.HM, gamma).items():
            bucket = by_tmono.setdefault(t_exp, {})
            bucket[g] = bucket.get(g, M.HM.A.zero()) + r
    return [({g: a for g, a in elt2.items() if not a.is_zero()})
            for t_exp, elt2 in sorted(by_tmono.items())]


def _in_a_span(M: GradedComodule, elt: dict, spanning: list) -> bool:
    """Is elt an A-linear combination of the spanning elements? Degreewise."""
    deg = M.element_degree(elt)
    if deg is None:
        return True
    cols = []
    for s in spanning:
        sdeg = M.element_degree(s)
        if sdeg is None or sdeg > deg:
            continue
        piece = M.HM.A.graded_piece(deg - sdeg)
        if piece is None:
            raise Undecidable("infinite-rank graded piece in span test")
        for e in piece:
            mult = {g: Poly(M.HM.A, {tuple(x + y for x, y in zip(e2, e)): c
                                     for e2, c in a.terms.items()})
                    for g, a in s.items()}
            cols.append(mult)
    basis = M.monomial_elements(deg)
    index = {bk: i for i, bk in enumerate(basis)}

    def vec_of(x):
        v = [Fraction(0)] * len(basis)
        for g, a in x.items():
            for e, c in a.terms.items():
                v[index[(g, e)]] += c
        return v

    target = vec_of(elt)
    matrix_cols = [vec_of(c) for c in cols]
    dom = M.HM.A.effective_domain
    if dom.kind == "Fp":
        p = dom.p
        rows = [[int(matrix_cols[j][i]) % p for j in range(len(cols))] + [int(target[i]) % p]
                for i in range(len(basis))]
        from .intlinalg import rank_field
        full = rank_field(rows, dom)
        without = rank_field([r[:-1] for r in rows], dom)
        return full == without
    rows = [[matrix_cols[j][i] for j in range(len(cols))] for i in range(len(basis))]
    denom = 1
    for row in rows + [target]:
        for x in row:
            denom = denom * x.denominator // _gcd(denom, x.denominator)
    A = IntMatrix.make([[int(x * denom) for x in row] for row in rows])
    b = [int(x * denom) for x in target]
    return solve_int(A, b) is not None


def finite_subcomodule(M: GradedComodule, elements: list) -> GradedComodule:
    """The smallest window-visible subcomodule containing the given elements.

    Closure: adjoin the coaction coordinates of every element, repeating until
    stable; every new element must stay inside the window.
    """
    current: list = []

    def add(elt):
        elt = {g: a for g, a in elt.items() if not a.is_zero()}
        if not elt:
            return False
        deg = M.element_degree(elt)
        if deg is None:
            return False
        if deg < M.window[0] or deg > M.window[1]:
            raise WindowExceeded(f"closure element of degree {deg} leaves the window")
        if current and _in_a_span(M, elt, current):
            return False
        current.append(elt)
        return True

    queue = [dict(e) for e in elements]
    guard = 0
    while queue:
        guard += 1
        if guard > 1000:
            raise WindowExceeded("closure did not stabilize")
        elt = queue.pop(0)
        if add(elt):
            queue.extend(coaction_coordinates(M, elt))

    from .hopf import right_coordinates
    gens = tuple((f"g{i}", M.element_degree(e)) for i, e in enumerate(current))
    embedding = {f"g{i}": e for i, e in enumerate(current)}
    coaction = {}
    for i, e in enumerate(current):
        # decompose psi(e) over coideal monomials, express each coordinate in
        # the new generators, and push the base coefficients back left
        coords: dict = {}
        for g, gamma in M.psi(e).items():
            for t_exp, r in right_coordinates(M.HM, gamma).items():
                bucket = coords.setdefault(t_exp, {})
                bucket[g] = bucket.get(g, M.HM.A.zero()) + r
        images: dict = {}
        for t_exp, coord_elt in coords.items():
            coord_elt = {g: a for g, a in coord_elt.items() if not a.is_zero()}
            combo = _express_in_span(M, coord_elt, current)
            if combo is None:
                raise WindowExceeded("coaction coordinate escapes the computed span")
            for j, apoly in combo.items():
                key = f"g{j}"
                gamma_coeff = M.HM.Gamma.monomial(t_exp) * M.HM.eta_R(apoly)
                images[key] = images.get(key, M.HM.Gamma.zero()) + gamma_coeff
        coaction[f"g{i}"] = images
    return GradedComodule(M.H, M.HM, gens, coaction, M.window,
                          label=f"subcomodule of {M.label} on {len(current)} generators",
                          embedding=embedding, ambient=M)


def _express_in_span(M: GradedComodule, elt: dict, spanning: list):
    """Solve elt = sum_j a_j * spanning[j] with homogeneous a_j; None if not in span."""
    deg = M.element_degree(elt)
    if deg is None:
        return {}
    cols = []
    tags = []
    for j, s in enumerate(spanning):
        sdeg = M.element_degree(s)
        if sdeg is None or sdeg > deg:
            continue
        piece = M.HM.A.graded_piece(deg - sdeg)
        if piece is None:
            raise Undecidable("infinite-rank piece")
        for e in piece:
            mult = {g: Poly(M.HM.A, {tuple(x + y for x, y in zip(e2, e)): c
                                     for e2, c in a.terms.items()})
                    for g, a in s.items()}
            cols.append(mult)
            tags.append((j, e))
    basis = M.monomial_elements(deg)
    index = {bk: i for i, bk in enumerate(basis)}

    def vec_of(x):
        v = [Fraction(0)] * len(basis)
        for g, a in x.items():
            for e, c in a.terms.items():
                v[index[(g, e)]] += c
        return v

    target = vec_of(elt)
    mcols = [vec_of(c) for c in cols]
    dom = M.HM.A.effective_domain
    if dom.kind == "Fp":
        p = dom.p
        sol = _solve_mod_p(mcols, target, p)
    else:
        denom = 1
        for col in mcols + [target]:
            for x in col:
                denom = denom * x.denominator // _gcd(denom, x.denominator)
        A = IntMatrix.make([[int(mcols[j][i] * denom) for j in range(len(mcols))]
                            for i in range(len(target))])
        sol = solve_int(A, [int(x * denom) for x in target])
    if sol is None:
        return None
    out: dict = {}
    for (j, e), c in zip(tags, sol):
        if c:
            out[j] = out.get(j, M.HM.A.zero()) + Poly(M.HM.A, {e: Fraction(c)})
    return out


def _solve_mod_p(cols, target, p):
    if not cols:
        return [] if all(int(x) % p == 0 for x in target) else None
    n = len(target)
    aug = [[int(cols[j][i]) % p for j in range(len(cols))] + [int(target[i]) % p]
           for i in range(n)]
    m = len(cols)
    piv = []
    r = 0
    for j in range(m):
        k = next((i for i in range(r, n) if aug[i][j] % p), None)
        if k is None:
            continue
        aug[r], aug[k] = aug[k], aug[r]
        inv = pow(aug[r][j], -1, p)
        aug[r] = [(x * inv) % p for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][j] % p:
                f = aug[i][j]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[r])]
        piv.append(j)
        r += 1
    for i in range(r, n):
        if aug[i][m] % p:
            return None
    sol = [0] * m
    for i, j in enumerate(piv):
        sol[j] = aug[i][m]
    return sol


# -- locality -----------------------------------------------------------------------


@dataclass(frozen=True)
class LocalityVerdict:
    local: bool | None           # None = undecidable within the window
    reason: str
    witness: str = ""

    def __str__(self):
        head = {True: "local", False: "not local", None: "undecidable within window"}[self.local]
        return f"{head}: {self.reason}" + (f" (witness: {self.witness})" if self.witness else "")


def locality_check(M: GradedComodule, ideal_gens: list) -> LocalityVerdict:
    """Decide whether the window-restricted module is local away from the ideal.

    For one generator f this is invertibility of the f-action; for several,
    an invertibly acting generator is a sufficient certificate and an ideal
    acting by zero on a nonzero module is a sufficient obstruction.
    """
    from .rings import parse_poly
    fs = [parse_poly(M.HM.A, f) if isinstance(f, str) else f for f in ideal_gens]
    verdicts = [_action_kind(M, f) for f in fs]
    if any(v[0] == "invertible" for v in verdicts):
        i = next(i for i, v in enumerate(verdicts) if v[0] == "invertible")
        return LocalityVerdict(True, f"generator {format_poly(fs[i])} acts invertibly "
                                     f"within the window")
    if len(fs) == 1:
        kind, detail = verdicts[0]
        if kind == "zero":
            return LocalityVerdict(False, "the generator acts by zero on a nonzero module; "
                                          "the kernel of the comparison map is everything",
                                   witness=detail)
        if kind == "not-injective":
            return LocalityVerdict(False, "multiplication has exact kernel within the window",
                                   witness=detail)
        if kind == "not-surjective":
            return LocalityVerdict(False, "multiplication misses part of the localization",
                                   witness=detail)
        return LocalityVerdict(None, detail)
    if all(v[0] == "zero" for v in verdicts):
        return LocalityVerdict(False, "every ideal generator acts by zero on a nonzero "
                                      "module: the module is all torsion")
    return LocalityVerdict(None, "no invertibility certificate within the window")


def _action_kind(M: GradedComodule, f: Poly):
    fM = Poly(M.HM.A, dict(f.terms))  # reduce through the coefficient ring
    if fM.is_zero():
        nonzero = next((t for t in range(M.window[0], M.window[1] + 1)
                        if M.monomial_elements(t)), None)
        if nonzero is None:
            return "invertible", "zero module"
        return "zero", f"annihilates degree {nonzero}"
    if fM.is_unit():
        return "invertible", "unit of the coefficient ring"
    d = fM.degree()
    lo, hi = M.window
    for t in range(lo, hi - d + 1 if d >= 0 else hi + 1):
        src = M.monomial_elements(t)
        tgt = M.monomial_elements(t + d)
        if not src and not tgt:
            continue
        index = {bk: i for i, bk in enumerate(tgt)}
        cols = []
        for g, e in src:
            prod = Poly(M.HM.A, {e: Fraction(1)}) * fM
            col = [Fraction(0)] * len(tgt)
            for e2, c in prod.terms.items():
                col[index[(g, e2)]] += c
            cols.append(col)
        dom = M.HM.A.effective_domain
        rows = [[cols[j][i] for j in range(len(cols))] for i in range(len(tgt))]
        if dom.kind == "Fp":
            from .intlinalg import rank_field
            rows_int = [[int(x) for x in row] for row in rows]
            rank = rank_field(rows_int, dom)
            if rank < len(src):
                return "not-injective", f"kernel at degree {t}"
            if rank < len(tgt):
                cols_int = _transpose(rows_int)
                missing_idx = next(
                    (i for i in range(len(tgt))
                     if _solve_mod_p(cols_int, [1 if k == i else 0 for k in range(len(tgt))],
                                     dom.p) is None), 0)
                missing = tgt[missing_idx]
                mono = format_poly(Poly(M.HM.A, {missing[1]: Fraction(1)}))
                return "not-surjective", (f"{format_poly(fM)}^-1 * {mono}*{missing[0]} "
                                          f"has no preimage at degree {t + d}")
        else:
            denom = 1
            for row in rows:
                for x in row:
                    denom = denom * x.denominator // _gcd(denom, x.denominator)
            A = IntMatrix.make([[int(x * denom) for x in row] for row in rows])
            kern = kernel_basis_int(A)
            if kern:
                return "not-injective", f"kernel at degree {t}"
            from .intlinalg import smith_normal_form
            snf = smith_normal_form(A)
            ok = snf.rank == len(tgt) and all(_unit_in(dom, x) for x in snf.divisors)
            if not ok:
                return "not-surjective", f"cokernel at degree {t + d}"
    return "invertible", "bijective on every window degree"


def _transpose(rows):
    return [list(col) for col in zip(*rows)] if rows else []


def _unit_in(dom: Domain, x: int) -> bool:
    if dom.kind in ("Q",):
        return x != 0
    if dom.kind == "Z":
        return abs(x) == 1
    return x % dom.p != 0 if dom.p else x != 0
