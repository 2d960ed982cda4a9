"""Machine check of the genus-2 twist identities behind the W_s construction.

Every identity is an exact equality of automorphisms of the rank-4 free
group; kernel statements go through the cap homomorphism for c5.  Twists
about the curves alpha_i, beta_j, gamma_k are built from the curve
definitions (image of a standard curve), not from hand-expanded formulas.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .blf import GAMMA1, GAMMA2, alpha_expr, beta_expr
from .mcg import MappingClass, cap_image, equal_bounded, evaluate_curve, in_kernel_phi, parse_expression
from .surface.operations import twist_of_curve_image
from .surface.table import chain_twists, validate_table

G = 2


@dataclass(frozen=True)
class LemmaCheck:
    id: str
    description: str
    run: Callable[[], tuple[bool, str]]


@dataclass(frozen=True)
class LemmaResult:
    id: str
    description: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"id": self.id, "description": self.description, "passed": self.passed, "detail": self.detail}


def M(text: str) -> MappingClass:
    return MappingClass.parse(text, G)


def curve_twist(expr: str) -> MappingClass:
    """Twist about the curve given by a twist-image expression."""
    cv = evaluate_curve(parse_expression(expr, G), G)
    tw, _ = twist_of_curve_image(cv.base, cv.conjugator)
    return tw


def _product(ms: Iterable[MappingClass]) -> MappingClass:
    out = MappingClass.identity(G)
    for m in ms:
        out = out * m
    return out


def _eq(lhs: MappingClass, rhs: MappingClass) -> tuple[bool, str]:
    ok = equal_bounded(lhs, rhs)
    return ok, "" if ok else f"{lhs.text()} != {rhs.text()}"


def _identity(lhs: str, rhs: str) -> Callable[[], tuple[bool, str]]:
    return lambda: _eq(M(lhs), M(rhs))


def _kernel(text: str) -> Callable[[], tuple[bool, str]]:
    def run():
        ok = in_kernel_phi(M(text))
        return ok, "" if ok else "capped class is nontrivial"
    return run


def _cap_trivial(text: str, expect: bool) -> Callable[[], tuple[bool, str]]:
    def run():
        triv = cap_image(M(text)).is_identity()
        return triv == expect, f"capped image {'is' if triv else 'is not'} the identity"
    return run


GAMMA_RHS = "iota2 t5^-2 t11^-1 t2^-1 t3^-2 t2^-1 t11^-1"


def _gamma() -> tuple[bool, str]:
    return _eq(curve_twist(GAMMA1) * curve_twist(GAMMA2), M(GAMMA_RHS))


def _beta() -> tuple[bool, str]:
    return _eq(curve_twist(beta_expr(1)) * curve_twist(beta_expr(-1)), M("xi t5^-4"))


def alphabeta_lhs(s: int) -> MappingClass:
    twists = [curve_twist(alpha_expr(i)) for i in range(1, s - 1)]
    twists += [curve_twist(beta_expr(s - 1)), curve_twist(beta_expr(-1))]
    return _product(twists)


def alphabeta_rhs(s: int) -> str:
    return f"xi^{s - 1} t5^{-5 * s + 6}"


def _alphabeta(s: int) -> Callable[[], tuple[bool, str]]:
    return lambda: _eq(alphabeta_lhs(s), M(alphabeta_rhs(s)))


def _cap_braid() -> tuple[bool, str]:
    a, b = cap_image(M("t2")), cap_image(M("t3"))
    ok = a.then(b).then(a) == b.then(a).then(b)
    return ok, "" if ok else "capped t2, t3 do not braid"


def _preserves_c5(text: str) -> Callable[[], tuple[bool, str]]:
    def run():
        c5 = chain_twists(G)["t5"].curve
        img = M(text).apply_curve(c5)
        ok = img.cls == c5.cls
        return ok, "" if ok else "image of c5 differs"
    return run


def lemma_checks() -> list[LemmaCheck]:
    chain_power = "(t5 t4 t3 t2)^5"
    palindrome = "t11 t2 t3 t4 t5^2 t4 t3 t2 t11"
    out = [
        LemmaCheck("eq1", "t4 t5^2 t4 = t5^-1 xi t5^-1", _identity("t4 t5^2 t4", "t5^-1 xi t5^-1")),
        LemmaCheck("lem-gamma", f"t_gamma1 t_gamma2 = {GAMMA_RHS}", _gamma),
        LemmaCheck("lem-gamma-kernel", f"{GAMMA_RHS} lies in the kernel of the cap map", _kernel(GAMMA_RHS)),
        LemmaCheck("lem-beta", "t_beta1 t_beta-1 = xi t5^-4", _beta),
        LemmaCheck("lem-beta-kernel", "xi t5^-4 lies in the kernel of the cap map", _kernel("xi t5^-4")),
    ]
    for s in range(3, 9):
        alphas = "t_alpha1" if s == 3 else f"t_alpha1 ... t_alpha{s - 2}"
        out.append(LemmaCheck(f"lem-alphabeta-s{s}",
                              f"{alphas} t_beta{s - 1} t_beta-1 = {alphabeta_rhs(s)}",
                              _alphabeta(s)))
        out.append(LemmaCheck(f"lem-alphabeta-kernel-s{s}", f"{alphabeta_rhs(s)} lies in the kernel of the cap map",
                              _kernel(alphabeta_rhs(s))))
    out.append(LemmaCheck("iota2-chain-palindrome", f"{chain_power} = {palindrome}",
                          _identity(chain_power, palindrome)))
    out.append(LemmaCheck("iota2-swap-t11", "iota2 t11 = t12 iota2", _identity("iota2 t11", "t12 iota2")))
    for j in range(2, 6):
        out.append(LemmaCheck(f"iota2-commutes-t{j}", f"iota2 t{j} = t{j} iota2",
                              _identity(f"iota2 t{j}", f"t{j} iota2")))
    out += [
        LemmaCheck("xi-preserves-c5", "xi maps c5 to itself", _preserves_c5("xi")),
        LemmaCheck("phi-t5", "cap map sends t5 to the identity", _cap_trivial("t5", True)),
        LemmaCheck("phi-xi", "cap map sends xi to the identity", _cap_trivial("xi", True)),
        LemmaCheck("phi-t2-nontrivial", "cap map sends t2 to a nontrivial class", _cap_trivial("t2", False)),
        LemmaCheck("phi-t3-nontrivial", "cap map sends t3 to a nontrivial class", _cap_trivial("t3", False)),
        LemmaCheck("phi-braid-t2-t3", "capped t2 and t3 satisfy the braid relation", _cap_braid),
    ]
    return out


def select(checks: list[LemmaCheck], only: str | None) -> list[LemmaCheck]:
    if only is None:
        return checks
    exact = [c for c in checks if c.id == only]
    if exact:
        return exact
    return [c for c in checks if c.id.startswith(only + "-")]


def run_checks(only: str | None = None, include_table: bool = True) -> list[LemmaResult]:
    """Run the suite against the active table; table self-checks come first."""
    results: list[LemmaResult] = []
    if include_table and only is None:
        for c in validate_table(chain_twists(G)):
            results.append(LemmaResult("table", c.name, c.passed, c.detail))
    for chk in select(lemma_checks(), only):
        try:
            ok, detail = chk.run()
        except Exception as e:  # a broken table can make any step throw
            ok, detail = False, f"{type(e).__name__}: {e}"
        results.append(LemmaResult(chk.id, chk.description, ok, detail))
    return results
