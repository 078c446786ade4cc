"""Command-line surface: construct algebras, run verification suites,
dump weight decompositions, certify conjugacy words.

All randomized checks draw integer coefficients in [-5, 5] and degrees
inside the active window from a PRNG fully determined by --seed, so equal
configurations produce byte-identical JSON.  Exit codes: 0 all checks
pass, 1 verification failure, 2 parse error, 3 unsupported input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .scalars import CycScalar, LaurentElt
from .rootsys import cartan_of_fixed
from .loop import LoopElt, TwistedContext
from .affine import (AffineElt, bracket_affine, verify_form_invariance,
                     window_gram_rank)
from .autos import (AutoWord, RootExp, Diagram, Cochar, TorusK, Ring, VShift,
                    tilde_lift, hat_lift, verify_automorphism,
                    verify_exact_sequence)
from .spectral import (Window, weight_decompose, verify_shift, verify_opposite,
                       verify_zero_weight, verify_product_rule,
                       rspan_isomorphism_check, decomposition_report)
from .mad import SubalgebraSpec, standard_mad, is_diagonalizable, mad_sanity, conjugacy_verify
from .parsing import ParseError, parse_affine, parse_word, parse_algebra_file

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_UNSUPPORTED = 3

SUITES = ("jacobi", "form", "lifts", "exactseq", "spectral", "mad")


class Session:
    """Loaded algebra context shared by all commands."""

    def __init__(self, alg, auto, window, seed, beta, samples,
                 window_explicit=False):
        self.alg = alg
        self.auto = auto
        self.m = auto.m
        self.ctx = TwistedContext(auto)
        self.lo, self.hi = window
        self.window_explicit = window_explicit
        self.seed = seed
        self.beta = beta
        self.samples = samples
        self.rng = random.Random(seed)
        self._win = None

    def window(self, lo=None, hi=None, with_cd=True):
        if lo is None and hi is None and with_cd and self._win is not None:
            return self._win
        w = Window(self.auto, self.lo if lo is None else lo,
                   self.hi if hi is None else hi, with_cd=with_cd,
                   context=self.ctx)
        if lo is None and hi is None and with_cd:
            self._win = w
        return w

    def sample_loop(self, terms=2):
        out = LoopElt.zero(self.alg, self.m)
        for _ in range(terms):
            j = self.rng.randint(self.lo, self.hi)
            basis = self.ctx.slice_basis(j)
            if not basis:
                continue
            e = basis[self.rng.randrange(len(basis))]
            coef = self.rng.randint(-5, 5)
            out = out + LoopElt.from_g(e.scale(coef), j)
        return out

    def sample_affine(self, terms=2):
        return AffineElt(self.sample_loop(terms),
                         c=self.rng.randint(-5, 5), d=self.rng.randint(-5, 5))

    def generator_kinds(self):
        """One representative generator per kind, for the lift suites."""
        alg, m = self.alg, self.m
        root = alg.root_of_index[alg.rank]
        gens = [
            RootExp(alg, root, LaurentElt.s_power(m, self.m, 2)),
            Cochar(alg, tuple(1 if i == 0 else 0 for i in range(alg.rank))),
            TorusK(alg, tuple(CycScalar(m, 2) for _ in range(alg.rank))),
            Ring(CycScalar(m, 3), 1),
            Ring(CycScalar(m, 1), -1),
        ]
        if not self.auto.is_identity():
            gens.append(Diagram(self.auto))
        return gens

    def sample_word(self, length, spread_budget=None):
        """Random hat word; total degree spread capped for interior room."""
        alg, m = self.alg, self.m
        budget = m if spread_budget is None else spread_budget
        gens = []
        roots = sorted(alg.root_of_index.values())
        while len(gens) < length:
            kind = self.rng.randrange(6)
            if kind == 0:
                deg = self.rng.choice([0, 0, 1, -1])
                cost = 2 * abs(deg)
                if cost > budget:
                    deg = 0
                    cost = 0
                budget -= cost
                root = roots[self.rng.randrange(len(roots))]
                gens.append(RootExp(alg, root,
                                    LaurentElt.s_power(m, deg, self.rng.randint(1, 3))))
            elif kind == 1:
                phi = [0] * alg.rank
                phi[self.rng.randrange(alg.rank)] = self.rng.choice([1, -1])
                cost = max(abs(self.cochar_value(phi, r)) for r in roots)
                if cost > budget:
                    continue
                budget -= cost
                gens.append(Cochar(alg, tuple(phi)))
            elif kind == 2:
                coords = tuple(
                    CycScalar(m, self.rng.choice([1, 2, 3, Fraction(1, 2), -1]))
                    for _ in range(alg.rank))
                gens.append(TorusK(alg, coords))
            elif kind == 3:
                gens.append(Ring(CycScalar(m, self.rng.choice([2, -1, 3])),
                                 self.rng.choice([1, -1])))
            elif kind == 4:
                gens.append(VShift(CycScalar(m, self.rng.randint(-3, 3))))
            else:
                if not self.auto.is_identity():
                    gens.append(Diagram(self.auto))
                else:
                    gens.append(VShift(CycScalar(m, self.rng.randint(-2, 2))))
        return AutoWord("hat", tuple(gens))

    @staticmethod
    def cochar_value(phi, root):
        return sum(c * v for c, v in zip(root, phi))


def _passed(report):
    return not report.get("failures")


# -- suites -------------------------------------------------------------


def suite_jacobi(session):
    """Antisymmetry on all window basis pairs, Jacobi on all triples."""
    if session.window_explicit:
        win = session.window()
    else:
        win = session.window(-2 * session.m, 2 * session.m)
    basis = win.basis
    n = len(basis)
    checked = 0
    failures = []
    for i in range(n):
        for j in range(i, n):
            checked += 1
            anti = bracket_affine(basis[i], basis[j]) + bracket_affine(basis[j], basis[i])
            if anti:
                failures.append({
                    "inputs": [basis[i].render(), basis[j].render()],
                    "lhs": anti.render(), "rhs": "0"})
    for i in range(n):
        bi = basis[i]
        for j in range(i, n):
            bj = basis[j]
            for k in range(j, n):
                bk = basis[k]
                checked += 1
                s = (bracket_affine(bi, bracket_affine(bj, bk))
                     + bracket_affine(bj, bracket_affine(bk, bi))
                     + bracket_affine(bk, bracket_affine(bi, bj)))
                if s:
                    failures.append({
                        "inputs": [bi.render(), bj.render(), bk.render()],
                        "lhs": s.render(), "rhs": "0"})
                    if len(failures) > 10:
                        return {"checked": checked, "failures": failures}
    return {"checked": checked, "failures": failures}


def suite_form(session):
    """Invariance on seeded random triples; Gram full rank per window."""
    report = verify_form_invariance(session.sample_affine, session.samples,
                                    session.beta)
    granks = []
    for halfwidth in range(session.m, 3 * session.m + 1, session.m):
        win = session.window(-halfwidth, halfwidth)
        rank = window_gram_rank(win.basis, session.beta)
        granks.append({"window": [-halfwidth, halfwidth],
                       "rank": rank, "size": win.size()})
        if rank != win.size():
            report["failures"].append({
                "inputs": [f"window [-{halfwidth},{halfwidth}]"],
                "lhs": str(rank), "rhs": str(win.size())})
    report["checked"] += len(granks)
    report["gram"] = granks
    return report


def suite_lifts(session):
    """Lift coherence per generator kind plus the cochar corrections."""
    failures = []
    checked = 0
    alg, m = session.alg, session.m
    for gen in session.generator_kinds():
        for level in ("loop", "tilde", "hat"):
            word = AutoWord(level, (gen,))
            sampler = (session.sample_loop if level == "loop"
                       else (lambda: AffineElt(session.sample_loop()))
                       if level == "tilde" else session.sample_affine)
            rep = verify_automorphism(word, sampler, max(1, session.samples // 10))
            checked += rep["checked"]
            for f in rep["failures"]:
                f["part"] = f"automorphism:{level}:{gen.render()}"
                failures.append(f)
    # cochar central correction: H_i (x) 1 gains phi(alpha_i) <X_i, X_-i> c
    phi = tuple(1 if i == 0 else 0 for i in range(alg.rank))
    co = Cochar(alg, phi)
    word = tilde_lift(AutoWord("loop", (co,)))
    for i in range(alg.rank):
        h = AffineElt(LoopElt.monomial(alg, m, i, 0))
        img = word.apply(h)
        xi = alg.index_of_root[alg.datum.simple[i]]
        yi = alg.index_of_root[tuple(-c for c in alg.datum.simple[i])]
        expected = CycScalar(m, phi[i] * alg.killing_table[(xi, yi)])
        checked += 1
        if img.c != expected or img.loop != h.loop:
            failures.append({
                "part": "cochar-correction",
                "inputs": [h.render()],
                "lhs": img.render(),
                "rhs": f"{h.render()} + {expected.render()}*c"})
    # hat lift: d -> d - X_phi with [X_phi, X_alpha] = phi(alpha) X_alpha
    hat = hat_lift(word)
    img = hat.apply(AffineElt.d_elt(alg, m))
    xphi = co.x_phi(m)
    checked += 1
    if img != AffineElt(LoopElt.from_g(xphi, 0).scale(-1), d=1):
        failures.append({
            "part": "cochar-derivation",
            "inputs": ["d"],
            "lhs": img.render(),
            "rhs": f"d - {xphi.render()}"})
    return {"checked": checked, "failures": failures}


def suite_exactseq(session):
    return verify_exact_sequence(session.generator_kinds(),
                                 session.sample_loop,
                                 max(1, session.samples // 10))


def suite_spectral(session, x_text=None):
    alg, m = session.alg, session.m
    if x_text:
        x = parse_affine(x_text, alg, m)
    else:
        h0, _ = cartan_of_fixed(session.auto)
        reg = LoopElt.zero(alg, m)
        for h in h0:
            reg = reg + LoopElt.from_g(h, 0)
        x = AffineElt(reg, d=1)
    win = session.window(-3 * session.m, 3 * session.m)
    decomp = weight_decompose(x, win)
    reports = {
        "decomposition": decomposition_report(decomp),
        "shift": verify_shift(decomp),
        "opposite": verify_opposite(decomp, session.beta),
        "zero_weight": verify_zero_weight(decomp),
        "product_rule": verify_product_rule(decomp),
        "rspan": rspan_isomorphism_check(decomp),
    }
    failures = []
    checked = 0
    checks = {}
    for name, rep in reports.items():
        if name == "decomposition":
            continue
        checked += rep["checked"]
        failures.extend(dict(f, part=name) for f in rep["failures"])
        checks[name] = {"checked": rep["checked"],
                        "pass": not rep["failures"]}
    if not decomp.complete:
        failures.append({"part": "decomposition",
                         "inputs": [x.render()],
                         "lhs": "incomplete",
                         "rhs": f"defect {decomp.defect}"})
    dump = dict(reports["decomposition"])
    dump["checks"] = checks
    return {"checked": checked, "failures": failures, "decomposition": dump}


def suite_mad(session, word_text=None, spec_lines=None):
    win = session.window()
    reference = standard_mad(session.auto)
    failures = []
    checked = 0
    flag, witness = is_diagonalizable(reference, win)
    checked += 1
    if not flag:
        failures.append({"part": "diagonalizable", "inputs": ["standard"],
                         "lhs": str(witness), "rhs": "joint eigenbasis"})
    rep = mad_sanity(reference, win)
    checked += rep["checked"]
    failures.extend(dict(f, part="sanity") for f in rep["failures"])
    result = {"checked": checked, "failures": failures,
              "dim": reference.dim(win)}
    if word_text is not None:
        word = parse_word(word_text, session.alg, session.m,
                          auto_builder=lambda p: session.auto)
        if spec_lines:
            gens = [parse_affine(line, session.alg, session.m)
                    for line in spec_lines]
            spec = SubalgebraSpec(gens)
        else:
            spec = reference
        conj = conjugacy_verify(word, spec, win)
        result["checked"] += conj["checked"]
        result["failures"].extend(dict(f, part="conjugacy")
                                  for f in conj["failures"])
    return result


# -- commands ------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="affinelie",
        description="Exact construction and verification of split and "
                    "twisted affine Kac-Moody Lie algebras.",
        epilog="Randomized checks draw integer coefficients in [-5,5] and "
               "degrees inside the window; --seed fixes every sample.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, window_default=None):
        p.add_argument("--algebra", required=True,
                       help="path to an algebra description file")
        p.add_argument("--window", nargs=2, type=int, metavar=("LO", "HI"),
                       default=window_default,
                       help="degree window in 1/m units (default -3m 3m)")
        p.add_argument("--samples", type=int, default=500)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--beta", default="1",
                       help="nonzero (c,d) pairing value")
        p.add_argument("--format", choices=("text", "json"), default="json")

    p = sub.add_parser("construct", help="build the algebra and print dimensions")
    common(p)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    common(p)
    p.add_argument("--x", help="element for the spectral suite")
    p.add_argument("--word", help="hat-level word for mad conjugacy")
    p.add_argument("--spec", help="subalgebra file (one element per line)")

    p = sub.add_parser("spectrum", help="dump a weight decomposition")
    common(p)
    p.add_argument("--x", help="element x = x' + d to decompose")

    p = sub.add_parser("conjugate", help="certify a conjugacy word")
    common(p)
    p.add_argument("--word", required=True)
    p.add_argument("--spec", required=True,
                   help="subalgebra file (one element per line)")
    return parser


def load_session(args):
    try:
        with open(args.algebra, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read algebra file: {exc}")
    alg, auto = parse_algebra_file(text)
    m = auto.m
    window = tuple(args.window) if args.window else (-3 * m, 3 * m)
    if window[0] > window[1]:
        raise ParseError("window LO must not exceed HI")
    from .parsing import parse_scalar
    beta = parse_scalar(args.beta, m)
    if not beta:
        raise ParseError("beta must be nonzero")
    return Session(alg, auto, window, args.seed, beta, args.samples,
                   window_explicit=args.window is not None)


def emit(payload, args, exit_code):
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    else:
        _emit_text(payload)
    return exit_code


def _emit_text(payload):
    if "dims" in payload:
        dims = payload["dims"]
        parts = [f"g: {dims['g']}"]
        for i, d in enumerate(dims.get("g_i", [])):
            parts.append(f"g_{i}: {d}")
        parts.append(f"h0: {dims['h0']}")
        print(", ".join(parts))
        print(f"window basis: {dims['window_basis']}")
        return
    for name, rep in sorted(payload.get("reports", {}).items()):
        status = "pass" if not rep.get("failures") else "FAIL"
        print(f"{name}: {status} (checked {rep.get('checked', 0)})")
        for f in rep.get("failures", [])[:5]:
            print(f"  {f}")
    print("pass" if payload.get("pass") else "FAIL")


def cmd_construct(args):
    session = load_session(args)
    h0, h = cartan_of_fixed(session.auto)
    win = session.window()
    dims = {
        "g": session.alg.dim,
        "h0": len(h0),
        "window_basis": win.size(),
    }
    if session.m > 1:
        dims["g_i"] = [len(b) for b in session.ctx.eigenspaces]
    payload = {
        "schema": 1,
        "command": "construct",
        "algebra": session.alg.datum.label,
        "m": session.m,
        "window": [session.lo, session.hi],
        "dims": dims,
    }
    return emit(payload, args, EXIT_PASS)


def cmd_verify(args):
    session = load_session(args)
    spec_lines = None
    if args.spec:
        with open(args.spec, encoding="utf-8") as fh:
            spec_lines = [l.strip() for l in fh if l.strip()
                          and not l.strip().startswith("#")]
    if args.suite == "jacobi":
        report = suite_jacobi(session)
    elif args.suite == "form":
        report = suite_form(session)
    elif args.suite == "lifts":
        report = suite_lifts(session)
    elif args.suite == "exactseq":
        report = suite_exactseq(session)
    elif args.suite == "spectral":
        report = suite_spectral(session, args.x)
    else:
        report = suite_mad(session, args.word, spec_lines)
    ok = _passed(report)
    payload = {
        "schema": 1,
        "command": f"verify {args.suite}",
        "algebra": session.alg.datum.label,
        "m": session.m,
        "seed": session.seed,
        "window": [session.lo, session.hi],
        "reports": {args.suite: report},
        "pass": ok,
    }
    return emit(payload, args, EXIT_PASS if ok else EXIT_FAIL)


def cmd_spectrum(args):
    session = load_session(args)
    report = suite_spectral(session, args.x)
    ok = _passed(report)
    payload = {
        "schema": 1,
        "command": "spectrum",
        "algebra": session.alg.datum.label,
        "m": session.m,
        "seed": session.seed,
        "window": [session.lo, session.hi],
        "reports": {"spectral": report},
        "pass": ok,
    }
    return emit(payload, args, EXIT_PASS if ok else EXIT_FAIL)


def cmd_conjugate(args):
    session = load_session(args)
    with open(args.spec, encoding="utf-8") as fh:
        lines = [l.strip() for l in fh if l.strip() and not l.strip().startswith("#")]
    gens = [parse_affine(l, session.alg, session.m) for l in lines]
    spec = SubalgebraSpec(gens)
    word = parse_word(args.word, session.alg, session.m,
                      auto_builder=lambda p: session.auto)
    win = session.window()
    report = conjugacy_verify(word, spec, win)
    ok = _passed(report)
    payload = {
        "schema": 1,
        "command": "conjugate",
        "algebra": session.alg.datum.label,
        "m": session.m,
        "window": [session.lo, session.hi],
        "reports": {"conjugacy": report},
        "pass": ok,
    }
    return emit(payload, args, EXIT_PASS if ok else EXIT_FAIL)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "construct":
            return cmd_construct(args)
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "spectrum":
            return cmd_spectrum(args)
        return cmd_conjugate(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as exc:
        print(f"unsupported input: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED


if __name__ == "__main__":
    sys.exit(main())
