"""``foxcalc`` command-line front end.

Exit status: 0 on success or when every requested check passes, 1 when a
check fails, 2 on usage or parse errors.  Results go to stdout, errors to
stderr.  All sampling is driven by ``--seed`` (default 0).
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from .cohomology import (
    cross_product_1_1,
    derivation_cochain,
    is_cocycle,
    kappa_from_pairing,
    mu_cochain,
    quasi_derivation_extend,
    rho_map,
)
from .fox_calculus import Derivation, Side, left_fox, right_fox
from .fox_pairing import (
    FoxPairing,
    PairingFormatError,
    check_aug_intersection,
    check_axioms,
    check_boundary_condition,
    check_skew_identity,
    deserialize_pairing,
    pairing_from_derivations,
    serialize_pairing,
    transpose,
)
from .fundamental_solver import (
    DEFAULT_L_MAX,
    InfeasibleError,
    SurfacePresentation,
    check_equivariance,
    solve_fundamental,
)
from .group_ring import CoeffRing, RingElem
from .higher_pairing import check_higher_cocycle, higher_pairing_Zn, parse_monomial_tuple
from .reports import CheckReport
from .words import Alphabet, WordSyntaxError, format_key, parse_key, random_key

__all__ = ["build_parser", "main", "run"]


class UsageError(Exception):
    pass


def _alphabet(args) -> Alphabet:
    if getattr(args, "alphabet", None):
        names = [n.strip() for n in args.alphabet.split(",") if n.strip()]
        return Alphabet.free(len(names), names)
    return Alphabet.letters(args.rank)


def _coeff(tag: str) -> CoeffRing:
    try:
        return CoeffRing.parse(tag)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _load(path: str) -> FoxPairing:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    return deserialize_pairing(text)


def _split(text: str) -> list[str]:
    return [t.strip() for t in text.split(";")]


def _emit_reports(reports: list[CheckReport], out) -> int:
    for r in reports:
        print(r.line(), file=out)
    return 0 if all(reports) else 1


# -- verbs --------------------------------------------------------------------

def cmd_eval(args, out) -> int:
    p = _load(args.pairing)
    A, K = p.alphabet, p.coeff_ring
    print(p(RingElem.parse(args.left, A, K), RingElem.parse(args.right, A, K)), file=out)
    return 0


def cmd_check(args, out) -> int:
    p = _load(args.pairing)
    n, s = args.samples, args.seed
    reports = []
    if args.axioms:
        reports.append(check_axioms(p, n, s))
    if args.skew:
        reports.append(check_skew_identity(p, n, s))
    if args.boundary:
        s_key = parse_key(args.boundary, p.alphabet)
        if args.containment:
            reports.append(check_boundary_condition(p, s_key, containment=True, samples=n, seed=s))
        elif args.a_s:
            a_s = RingElem.parse(args.a_s, p.alphabet, p.coeff_ring)
            reports.append(check_boundary_condition(p, s_key, a_s, samples=n, seed=s))
        else:
            reports.append(check_boundary_condition(p, s_key, normalized=True, samples=n, seed=s))
    if args.aug_intersection:
        reports.append(check_aug_intersection(p, _genus(p, args), n, s))
    if args.equivariance:
        reports.append(check_equivariance(p, SurfacePresentation.standard(_genus(p, args)), samples=n, seed=s))
    if args.kappa:
        reports.append(is_cocycle(kappa_from_pairing(p), n, s, name="kappa-cocycle"))
    if not reports:
        reports.append(check_axioms(p, n, s))
    return _emit_reports(reports, out)


def _genus(p: FoxPairing, args) -> int:
    if args.genus:
        return args.genus
    if p.alphabet.rank % 2:
        raise UsageError("odd rank alphabet: pass --genus")
    return p.alphabet.rank // 2


def cmd_solve(args, out) -> int:
    K = _coeff(args.coeff)
    if not K.is_field:
        raise UsageError("solve needs a field: --coeff Q or F2")
    sp = SurfacePresentation.standard(args.genus)
    try:
        p, info = solve_fundamental(sp, K, args.l_start, args.l_max, args.parallel, with_info=True)
    except InfeasibleError as e:
        print(str(e), file=sys.stderr)
        return 1
    aug = check_aug_intersection(p, sp.genus, 100, args.seed)
    lam = aug.details.get("lambda")
    meta = (
        f"genus={sp.genus} coeff={K.value} L={info.L} L_eq={info.L_eq} kernel_dim={info.kernel_dim}"
        f" lambda={lam} uniqueness=bounded-support"
    )
    p = p.with_metadata(meta)
    text = serialize_pairing(p)
    if args.out:
        Path(args.out).write_text(text)
    else:
        out.write(text)
    for c in info.certificates:
        print(f"# infeasible {c}", file=out)
    print(f"L={info.L} kernel_dim={info.kernel_dim} lambda={lam}", file=out)
    return 0


def cmd_transpose(args, out) -> int:
    text = serialize_pairing(transpose(_load(args.pairing)))
    if args.out:
        Path(args.out).write_text(text)
    else:
        out.write(text)
    return 0


def cmd_derive(args, out) -> int:
    A = _alphabet(args)
    K = _coeff(args.coeff)
    x = RingElem.parse(args.word, A, K)
    gens = [args.gen] if args.gen else list(A.names)
    fn = left_fox if args.side == "left" else right_fox
    for g in gens:
        i = A.index_of(g)
        if i < 0:
            raise UsageError(f"--gen must name a generator, not an inverse: {g}")
        print(f"{A.names[i - 1]}: {fn(x, i)}", file=out)
    return 0


def cmd_higher(args, out) -> int:
    K = _coeff(args.coeff)
    hp = higher_pairing_Zn(args.n, K, printed=args.printed)
    status = 0
    if args.left is not None or args.right is not None:
        if args.left is None or args.right is None:
            raise UsageError("give both --left and --right")
        a = parse_monomial_tuple(args.left, args.n)
        b = parse_monomial_tuple(args.right, args.n)
        if len(a) != args.n or len(b) != args.n:
            raise UsageError(f"tuples must have {args.n} entries")
        print(hp.on_keys(a, b), file=out)
    if args.check:
        status = _emit_reports([check_higher_cocycle(hp, args.samples, args.seed)], out)
    return status


def cmd_kappa(args, out) -> int:
    p = _load(args.pairing)
    kappa = kappa_from_pairing(p)
    status = 0
    if args.left is not None:
        g = parse_key(args.left, p.alphabet)
        h = parse_key(args.right or "1", p.alphabet)
        print(kappa(g, h), file=out)
    if args.check:
        status = _emit_reports([is_cocycle(kappa, args.samples, args.seed, name="kappa-cocycle")], out)
    return status


def cmd_quasi(args, out) -> int:
    p = _load(args.pairing)
    vals = _split(args.values) if args.values else ["0"] * p.alphabet.rank
    if len(vals) != p.alphabet.rank:
        raise UsageError(f"--values needs {p.alphabet.rank} entries separated by ';'")
    q, rep = quasi_derivation_extend(p, vals, args.samples, args.seed)
    if args.word:
        print(q(parse_key(args.word, p.alphabet)), file=out)
    return _emit_reports([rep], out)


def cmd_rho(args, out) -> int:
    A = _alphabet(args)
    K = _coeff(args.coeff)
    dl_vals = _split(args.dl)
    dr_vals = _split(args.dr)
    if len(dl_vals) != A.rank or len(dr_vals) != A.rank:
        raise UsageError(f"--dl and --dr need {A.rank} entries separated by ';'")
    dl = Derivation.from_strings(Side.LEFT, dl_vals, A, K)
    dr = Derivation.from_strings(Side.RIGHT, dr_vals, A, K)
    f = mu_cochain(cross_product_1_1(derivation_cochain(dl), derivation_cochain(dr)))
    rho = rho_map(f)
    if args.left is not None:
        print(rho(RingElem.parse(args.left, A, K), RingElem.parse(args.right or "1", A, K)), file=out)
    ref = pairing_from_derivations(dl, dr)
    rng = random.Random(args.seed)
    rep = CheckReport("rho-equals-product", True, args.samples, args.seed)
    for _ in range(args.samples):
        a = random_key(rng, A, 5)
        b = random_key(rng, A, 5)
        if rho.on_keys(a, b) != ref.on_keys(a, b):
            rep = CheckReport("rho-equals-product", False, args.samples, args.seed,
                              f"a={format_key(a, A)},b={format_key(b, A)}")
            break
    return _emit_reports([rep, check_axioms(rho, args.samples, args.seed)], out)


# -- parser -------------------------------------------------------------------

def _sampling(sp, samples: int):
    sp.add_argument("--samples", type=int, default=samples, help=f"sample count (default {samples})")
    sp.add_argument("--seed", type=int, default=0, help="random seed (default 0)")


def _alpha_flags(sp):
    sp.add_argument("--alphabet", help="comma-separated generator names (e.g. a,b)")
    sp.add_argument("--rank", type=int, default=2, help="rank of the a,b,c,... alphabet (default 2)")
    sp.add_argument("--coeff", default="Q", help="Q, Z or F2 (default Q)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="foxcalc", description="Fox calculus and Fox pairings of free groups.")
    sub = ap.add_subparsers(dest="verb", required=True)

    sp = sub.add_parser("eval", help="evaluate a pairing on two ring elements")
    sp.add_argument("--pairing", required=True)
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)
    sp.set_defaults(fn=cmd_eval)

    sp = sub.add_parser("check", help="sampled property checks of a pairing")
    sp.add_argument("--pairing", required=True)
    sp.add_argument("--axioms", action="store_true", help="Fox pairing laws (default when nothing chosen)")
    sp.add_argument("--skew", action="store_true", help="eta + eta^t = (1-g)(1-h)")
    sp.add_argument("--boundary", metavar="WORD", help="boundary element s")
    sp.add_argument("--a-s", dest="a_s", help="coefficient a_s in eta(s,g) = a_s(1-g) (default 1)")
    sp.add_argument("--containment", action="store_true", help="check eta(s,g) in (s-1)K[G] instead")
    sp.add_argument("--aug-intersection", action="store_true", help="aug eta = lambda * intersection form")
    sp.add_argument("--equivariance", action="store_true", help="invariance under automorphisms fixing zeta")
    sp.add_argument("--kappa", action="store_true", help="kappa is a 2-cocycle")
    sp.add_argument("--genus", type=int, help="surface genus (default rank/2)")
    _sampling(sp, 100)
    sp.set_defaults(fn=cmd_check)

    sp = sub.add_parser("solve", help="fundamental pairing of a genus-g surface with one boundary")
    sp.add_argument("--genus", type=int, required=True)
    sp.add_argument("--coeff", default="Q", help="Q or F2 (default Q)")
    sp.add_argument("--l-start", type=int, default=2, help="first support bound (default 2)")
    sp.add_argument("--l-max", type=int, default=DEFAULT_L_MAX, help=f"last support bound (default {DEFAULT_L_MAX})")
    sp.add_argument("--parallel", type=int, default=0, help="worker processes (default 0: serial)")
    sp.add_argument("--seed", type=int, default=0, help="seed for the lambda sampling (default 0)")
    sp.add_argument("--out", help="pairing file to write (default stdout)")
    sp.set_defaults(fn=cmd_solve)

    sp = sub.add_parser("transpose", help="transpose a pairing")
    sp.add_argument("--pairing", required=True)
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_transpose)

    sp = sub.add_parser("derive", help="left or right Fox derivatives")
    sp.add_argument("--word", required=True, help="word or ring element")
    sp.add_argument("--gen", help="generator name (default: all)")
    sp.add_argument("--side", choices=("left", "right"), default="left")
    _alpha_flags(sp)
    sp.set_defaults(fn=cmd_derive)

    sp = sub.add_parser("higher", help="higher Fox pairing of Z^n")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--left", help="n monomials separated by ';'")
    sp.add_argument("--right", help="n monomials separated by ';'")
    sp.add_argument("--coeff", default="Q")
    sp.add_argument("--check", action="store_true", help="sampled cocycle check of both slots")
    sp.add_argument("--printed", action="store_true", help="use the diagonal-only comparison formula")
    _sampling(sp, 50)
    sp.set_defaults(fn=cmd_higher)

    sp = sub.add_parser("kappa", help="the 2-cochain eta(g,h) h^-1 g^-1")
    sp.add_argument("--pairing", required=True)
    sp.add_argument("--left")
    sp.add_argument("--right")
    sp.add_argument("--check", action="store_true")
    _sampling(sp, 100)
    sp.set_defaults(fn=cmd_kappa)

    sp = sub.add_parser("quasi", help="extend a quasi-derivation from generator values")
    sp.add_argument("--pairing", required=True)
    sp.add_argument("--values", help="generator values separated by ';' (default all 0)")
    sp.add_argument("--word")
    _sampling(sp, 100)
    sp.set_defaults(fn=cmd_quasi)

    sp = sub.add_parser("rho", help="rho of the cross product of two derivations")
    sp.add_argument("--dl", required=True, help="left derivation generator values separated by ';'")
    sp.add_argument("--dr", required=True, help="right derivation generator values separated by ';'")
    sp.add_argument("--left")
    sp.add_argument("--right")
    _alpha_flags(sp)
    _sampling(sp, 50)
    sp.set_defaults(fn=cmd_rho)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.fn(args, out)
    except (UsageError, PairingFormatError, WordSyntaxError, KeyError, ValueError, TypeError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"foxcalc {args.verb}: error: {msg}", file=sys.stderr)
        return 2


def run():
    sys.exit(main())
