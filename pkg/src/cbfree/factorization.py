"""Three-step bounded factorizations over prefix stabilisers.

Every finitely supported automorphism phi factors as a product of three
(F, U) pairs, where each F is the identity or the fixed block swap f
(a_i <-> a_{n+i} for i <= n) and each U fixes a1..an pointwise. The
construction follows the block-swap scheme: approximate phi^-1 by psi
supported in A_m, conjugate psi out of the way with f and the disjoint
swap g (a_{n+i} <-> a_{m'+i}, m' = max(m, 2n)), and read the three
pairs off the resulting identity

    phi = (id . g)(f . u^-1)(f . g v),   u = f g psi g f,  v = psi phi.

Certificates carry the full witness data and are re-checked by an
independent verifier that trusts nothing but apply/compose/fixes_prefix.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence

from .automorphisms import (
    FinSuppAut,
    apply,
    aut_from_obj,
    aut_to_obj,
    compose,
    fixes_prefix,
    identity,
    invert,
)
from .errors import InternalVerificationFailure, ParseError, RangeOverlap
from .whitehead import DEFAULT_PEAK_BUDGET, RANK_CAP, complement_basis
from .words import format_word, generator


def swap_f(n: int) -> FinSuppAut:
    """The involution a_i <-> a_{n+i} for 1 <= i <= n (width 2n)."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    images = [generator(n + i) for i in range(1, n + 1)]
    images += [generator(i) for i in range(1, n + 1)]
    return FinSuppAut._normalized(images)


def swap_g(n: int, mprime: int) -> FinSuppAut:
    """The involution a_{n+i} <-> a_{m'+i} for 1 <= i <= n, fixing
    everything else; lies in U_n. Requires m' >= 2n so the two swapped
    blocks cannot overlap."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if mprime < 2 * n:
        raise RangeOverlap(f"m'={mprime} < 2n={2 * n}: swapped blocks overlap")
    images = [generator(i) for i in range(1, mprime + n + 1)]
    for i in range(1, n + 1):
        images[n + i - 1] = generator(mprime + i)
        images[mprime + i - 1] = generator(n + i)
    return FinSuppAut._normalized(images)


def approximate(
    phi: FinSuppAut,
    n: int,
    strategy: str = "width",
    budget: int = DEFAULT_PEAK_BUDGET,
    cap: int = RANK_CAP,
):
    """(psi, m) with psi = phi on a1..an and psi = id beyond a_m, m >= n.

    'width': m = max(n, support of phi) and psi = phi itself, which is
    exact for finitely supported phi. 'minimal': m only as large as the
    prefix images force; the images of a1..an are completed to a basis
    of A_m via a Whitehead complement.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if strategy == "width":
        return phi, max(n, phi.support)
    if strategy != "minimal":
        raise ValueError(f"unknown strategy {strategy!r}")
    t = tuple(phi.image(i) for i in range(1, n + 1))
    m = max([n] + [w.max_index for w in t])
    comp = complement_basis(t, m, budget=budget, cap=cap)
    if m == 0:
        return identity(), 0
    return FinSuppAut(list(t) + list(comp)), m


@dataclass(frozen=True)
class Certificate:
    """A factorization witness: phi equals the ordered product
    F1.U1.F2.U2.F3.U3 with every F in {id, swap_f(n)} and every U
    fixing a1..an."""

    n: int
    phi: FinSuppAut
    m: int
    mprime: int
    pairs: tuple
    psi: FinSuppAut
    u: FinSuppAut
    v: FinSuppAut


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    checks: tuple
    failing_factor: Optional[int] = None
    witness_generator: Optional[int] = None

    def summary(self) -> str:
        lines = []
        for check in self.checks:
            status = "ok" if check.passed else "FAIL"
            line = f"{status:4} {check.name}"
            if check.detail:
                line += f": {check.detail}"
            lines.append(line)
        lines.append("verification: " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines)


def factorize(
    phi: FinSuppAut,
    n: int,
    strategy: str = "width",
    budget: int = DEFAULT_PEAK_BUDGET,
    cap: int = RANK_CAP,
) -> Certificate:
    """Construct and verify the three-pair certificate for phi at n."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    n0 = max([n] + [phi.image(i).max_index for i in range(1, n + 1)])
    psi, m = approximate(invert(phi), n0, strategy=strategy, budget=budget, cap=cap)
    v = compose(psi, phi)
    mprime = max(m, 2 * n)
    f = swap_f(n)
    g = swap_g(n, mprime)
    u = compose(f, g, psi, g, f)
    pairs = (
        (identity(), g),
        (f, invert(u)),
        (f, compose(g, v)),
    )
    cert = Certificate(n=n, phi=phi, m=m, mprime=mprime, pairs=pairs, psi=psi, u=u, v=v)
    report = verify_certificate(cert)
    if not report.passed:
        raise InternalVerificationFailure(
            "freshly built certificate failed verification:\n" + report.summary()
        )
    return cert


def verify_certificate(cert: Certificate) -> VerificationReport:
    """Independently recheck every certificate invariant.

    Uses only apply/compose/fixes_prefix on the pairs, the target and
    the recorded ranks; the intermediate witnesses are not trusted.
    """
    checks = []
    failing_factor = None
    witness = None

    ok = len(cert.pairs) == 3
    checks.append(
        CheckResult("pair-count", ok, "" if ok else f"{len(cert.pairs)} pairs, need 3")
    )

    f_ref = swap_f(cert.n)
    for k, (f_slot, _) in enumerate(cert.pairs, start=1):
        ok = f_slot == identity() or f_slot == f_ref
        detail = ""
        if not ok:
            bad = _first_difference(f_slot, f_ref)
            detail = f"factor {k} is neither id nor the block swap (see a{bad})"
            if failing_factor is None:
                failing_factor = k
                witness = bad
        checks.append(CheckResult(f"f-slot-{k}", ok, detail))

    for k, (_, u_slot) in enumerate(cert.pairs, start=1):
        ok = fixes_prefix(u_slot, cert.n)
        detail = ""
        if not ok:
            bad = next(
                i
                for i in range(1, cert.n + 1)
                if u_slot.image(i).signed != (i,)
            )
            detail = f"factor {k} moves a{bad}"
            if failing_factor is None:
                failing_factor = k
                witness = bad
        checks.append(CheckResult(f"u-slot-{k}", ok, detail))

    ok = cert.mprime == max(cert.m, 2 * cert.n)
    checks.append(
        CheckResult(
            "mprime",
            ok,
            "" if ok else f"m'={cert.mprime} != max(m={cert.m}, 2n={2 * cert.n})",
        )
    )

    factors = [x for pair in cert.pairs for x in pair]
    product = compose(*factors)
    ok = product == cert.phi
    detail = ""
    if not ok:
        bad = _first_difference(product, cert.phi)
        detail = (
            f"product disagrees with the target at a{bad}: "
            f"{format_word(product.image(bad))} vs {format_word(cert.phi.image(bad))}"
        )
        if witness is None:
            witness = bad
    checks.append(CheckResult("product", ok, detail))

    passed = all(c.passed for c in checks)
    return VerificationReport(
        passed=passed,
        checks=tuple(checks),
        failing_factor=failing_factor,
        witness_generator=witness,
    )


def _first_difference(a: FinSuppAut, b: FinSuppAut) -> int:
    for i in range(1, max(a.support, b.support) + 1):
        if a.image(i) != b.image(i):
            return i
    return 0


def certificate_to_obj(cert: Certificate) -> dict:
    return {
        "n": cert.n,
        "phi": aut_to_obj(cert.phi),
        "m": cert.m,
        "mprime": cert.mprime,
        "psi": aut_to_obj(cert.psi),
        "u": aut_to_obj(cert.u),
        "v": aut_to_obj(cert.v),
        "pairs": [[aut_to_obj(f), aut_to_obj(u)] for f, u in cert.pairs],
    }


def certificate_to_json(cert: Certificate) -> str:
    return json.dumps(certificate_to_obj(cert), separators=(", ", ": ")) + "\n"


def certificate_from_obj(obj: dict) -> Certificate:
    try:
        pairs = tuple(
            (aut_from_obj(f), aut_from_obj(u)) for f, u in obj["pairs"]
        )
        return Certificate(
            n=int(obj["n"]),
            phi=aut_from_obj(obj["phi"]),
            m=int(obj["m"]),
            mprime=int(obj["mprime"]),
            pairs=pairs,
            psi=aut_from_obj(obj["psi"]),
            u=aut_from_obj(obj["u"]),
            v=aut_from_obj(obj["v"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed certificate object: {exc}") from None


def certificate_from_json(text: str) -> Certificate:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"certificate is not valid JSON: {exc}") from None
    return certificate_from_obj(obj)
