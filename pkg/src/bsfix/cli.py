"""``bsn``: command-line front end.

Exit codes: 0 success, 2 parse error, 3 domain error, 4 verification mismatch.
"""
from __future__ import annotations

import argparse
import json
import random
import sys

from .errors import DomainError, ParseError
from .fixstab import (
    closure,
    eclosure,
    estab,
    fix,
    per,
    stab_aut,
    stab_subgroup,
)
from .group import (
    bs_from_word,
    bs_inv,
    bs_kth_root,
    bs_mul,
    bs_pow,
    bs_root_closure,
    classify_subgroup,
    format_element,
    parse_element,
)
from .morphisms import apply, compose, format_morphism, parse_morphism
from .oracle import (
    ScanBox,
    oracle_divisor_scan,
    oracle_fixed_scan,
    oracle_lattice_member,
    oracle_stab_scan,
    oracle_word_differential,
    random_element,
    random_morphism,
)
from .ring import Base, format_zn

COMMANDS = (
    "eval", "mul", "pow", "inv", "root", "rootclosure", "classify", "apply",
    "compose", "fix", "per", "stab", "estab", "cl", "ecl", "verify",
)
VERIFY_SUBJECTS = ("word", "fix", "stab", "roots", "closures")

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_MISMATCH = 0, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bsn", description="Fixed points and stabilizers in BS(1, n).")
    p.add_argument("--n", type=int, required=True, help="the parameter n >= 2")
    p.add_argument("--json", action="store_true", help="emit key-sorted JSON")
    p.add_argument("--verbose", action="store_true", help="include derivations")
    p.add_argument("--k", type=int, help="power or root exponent")
    p.add_argument("--bound", type=int, default=3, help="oracle box size")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=None, help="samples for verify")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("args", nargs="*")
    return p


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _elem(g):
    return {"gamma": format_zn(g.gamma), "c": g.c}


def _morph(f):
    if hasattr(f, "alpha"):
        return {"alpha": format_zn(f.alpha), "beta": format_zn(f.beta)}
    return {"type_ii": _elem(f.target)}


def _need(args, count, what):
    if len(args) < count:
        raise ParseError(f"expected {what}")


def _need_k(ns):
    if ns.k is None:
        raise ParseError("--k is required")
    return ns.k


# ---------------------------------------------------------------- verify suites

def _verify_word(base, ns, rng):
    report = oracle_word_differential(ns.count or 1000, 30, base, ns.seed)
    return report["checked"], report["mismatches"]


def _verify_fix(base, ns, rng):
    mismatches, checked = [], 0
    for _ in range(ns.count or 60):
        f = random_morphism(rng, base, rng.choice(("automorphism", "type_i")))
        if f.alpha == base.one():
            continue
        res = fix(f)
        gen, der = res.generator, res.derivation
        bound = ns.bound * gen.c
        scan = oracle_fixed_scan(f, ScanBox(c_bound=bound))
        expected = [gen**m for m in range(-ns.bound, ns.bound + 1)]
        checked += 1
        problems = []
        if apply(f, gen) != gen:
            problems.append("generator not fixed")
        if scan != expected:
            problems.append("scan differs from powers of generator")
        if der.c0 % der.c_tilde or oracle_divisor_scan(f, der.c0) != der.c_tilde:
            problems.append("divisor scan of c0 disagrees")
        if problems:
            mismatches.append({"morphism": format_morphism(f), "problems": problems})
    return checked, mismatches


def _verify_stab(base, ns, rng):
    mismatches, checked = [], 0
    box = ScanBox(c_bound=1, exp_bound=ns.bound, include_sign=True)
    member_bound = 2 ** max(base.r, 1) * ns.bound
    for _ in range(ns.count or 30):
        g = random_element(rng, base, cmax=3, nonzero_c=True)
        st = stab_aut(g)
        checked += 1
        problems = []
        if st.rank != base.r:
            problems.append("rank differs from number of primes")
        if any(apply(f, g) != g for f in st.generators):
            problems.append("generator does not fix g")
        for f in oracle_stab_scan(g, box):
            if oracle_lattice_member(f, list(st.generators), member_bound) is None:
                problems.append(f"{format_morphism(f)} not generated")
        if problems:
            mismatches.append({"element": format_element(g), "problems": problems})
    return checked, mismatches


def _verify_roots(base, ns, rng):
    mismatches, checked = [], 0
    for _ in range(ns.count or 200):
        g = random_element(rng, base)
        k = rng.randint(1, 5)
        checked += 1
        if bs_kth_root(bs_pow(g, k), k) != g:
            mismatches.append({"element": format_element(g), "k": k})
    return checked, mismatches


def _verify_closures(base, ns, rng):
    mismatches, checked = [], 0
    for _ in range(ns.count or 60):
        g = random_element(rng, base, cmax=4, nonzero_c=True)
        checked += 1
        h, _ = bs_root_closure(g)
        if h.c < 0:
            h = bs_inv(h)
        cl, ecl = closure([g]), eclosure([g])
        if cl.generator != h or ecl.generator != h:
            mismatches.append({"element": format_element(g)})
    return checked, mismatches


_VERIFY = {
    "word": _verify_word, "fix": _verify_fix, "stab": _verify_stab,
    "roots": _verify_roots, "closures": _verify_closures,
}


# ---------------------------------------------------------------- dispatch

def _dispatch(ns, base):
    """Returns ``(text, payload, exit_code)``."""
    a = ns.args
    cmd = ns.command
    E = lambda s: parse_element(s, base)  # noqa: E731
    F = lambda s: parse_morphism(s, base)  # noqa: E731
    verbose = ns.verbose

    if cmd == "eval":
        g = bs_from_word(" ".join(a), base)
        return format_element(g), _elem(g), 0
    if cmd == "mul":
        _need(a, 1, "one or more elements")
        g = E(a[0])
        for s in a[1:]:
            g = bs_mul(g, E(s))
        return format_element(g), _elem(g), 0
    if cmd == "pow":
        _need(a, 1, "an element")
        g = bs_pow(E(a[0]), _need_k(ns))
        return format_element(g), _elem(g), 0
    if cmd == "inv":
        _need(a, 1, "an element")
        g = bs_inv(E(a[0]))
        return format_element(g), _elem(g), 0
    if cmd == "root":
        _need(a, 1, "an element")
        h = bs_kth_root(E(a[0]), _need_k(ns))
        if h is None:
            return "none", None, 0
        return format_element(h), _elem(h), 0
    if cmd == "rootclosure":
        _need(a, 1, "an element")
        h, m = bs_root_closure(E(a[0]))
        return f"{format_element(h)} ^ {m}", {"root": _elem(h), "exponent": m}, 0
    if cmd == "classify":
        _need(a, 1, "one or more elements")
        cls = classify_subgroup([E(s) for s in a])
        if cls.kind == "cyclic":
            return (f"cyclic generator {format_element(cls.generator)}",
                    {"type": "cyclic", "generator": _elem(cls.generator)}, 0)
        return (
            f"finite_index t_part {format_element(cls.t_part)} "
            f"kernel_gen {format_element(cls.kernel_gen)}",
            {"type": "finite_index", "t_part": _elem(cls.t_part),
             "kernel_gen": _elem(cls.kernel_gen)},
            0,
        )
    if cmd == "apply":
        _need(a, 2, "a morphism and an element")
        g = apply(F(a[0]), E(a[1]))
        return format_element(g), _elem(g), 0
    if cmd == "compose":
        _need(a, 2, "two morphisms")
        f = compose(F(a[0]), F(a[1]))
        return format_morphism(f), _morph(f), 0
    if cmd in ("fix", "per"):
        _need(a, 1, "a morphism")
        res = (fix if cmd == "fix" else per)(F(a[0]))
        return _with_derivation(str(res), res, verbose), res.as_dict(verbose), 0
    if cmd == "stab":
        _need(a, 1, "one or more elements")
        gens = [E(s) for s in a]
        res = stab_aut(gens[0]) if len(gens) == 1 else stab_subgroup(gens)
        return _with_derivation(str(res), res, verbose), res.as_dict(verbose), 0
    if cmd == "estab":
        _need(a, 1, "an element")
        res = estab(E(a[0]))
        return str(res), res.as_dict(), 0
    if cmd in ("cl", "ecl"):
        _need(a, 1, "one or more elements")
        res = (closure if cmd == "cl" else eclosure)([E(s) for s in a])
        return str(res), res.as_dict(), 0
    if cmd == "verify":
        _need(a, 1, "a subject")
        subject = a[0]
        if subject not in _VERIFY:
            raise ParseError(f"unknown verify subject {subject!r}; one of {', '.join(VERIFY_SUBJECTS)}")
        rng = random.Random(ns.seed)
        checked, mismatches = _VERIFY[subject](base, ns, rng)
        text = f"verify {subject}: checked {checked}, mismatches {len(mismatches)}"
        payload = {"subject": subject, "checked": checked, "mismatches": mismatches}
        return text, payload, EXIT_MISMATCH if mismatches else EXIT_OK
    raise ParseError(f"unknown command {cmd!r}")


def _with_derivation(text, res, verbose):
    if verbose and res.derivation is not None:
        return text + "\n" + _dumps(res.derivation.as_dict())
    return text


def run(argv: list[str]) -> tuple[int, str]:
    """Run one invocation; returns ``(exit_code, output_text)``."""
    try:
        ns = _build_parser().parse_intermixed_args(argv)
        try:
            base = Base(ns.n)
        except DomainError as e:
            raise ParseError(str(e)) from None
        text, payload, code = _dispatch(ns, base)
    except ParseError as e:
        return EXIT_PARSE, f"error: {e}"
    except (DomainError, ZeroDivisionError) as e:
        return EXIT_DOMAIN, f"error: {type(e).__name__}: {e}"
    if ns.json:
        return code, _dumps(payload)
    return code, text


def main(argv=None) -> int:
    code, text = run(sys.argv[1:] if argv is None else argv)
    print(text, file=sys.stderr if code in (EXIT_PARSE, EXIT_DOMAIN) else sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
