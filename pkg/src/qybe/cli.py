"""Command-line front end: build representations and R-matrices, run
verification suites, export matrices as JSON documents.

Exit codes: 0 success, 1 verification failure, 2 input validation,
3 mathematical degeneracy (pole or singular eigenbasis).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from . import cyclic as cy
from . import verify
from .errors import (BadSpin, OrderMismatch, ParameterDomainError, PoleAtSector,
                     QybeError, SingularBasis, UnsupportedPair, WrongMode)
from .qcore import DeformationParameter, ToleranceConfig
from .rep import build_spin_rep
from .rop import assemble_R

DEFAULT_SEED = 42

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_VALIDATION = 2
EXIT_DEGENERATE = 3


def parse_complex(text: str) -> complex:
    """Accepts 'a+bi' / 'a-bi' / 'a' / 'bi' / 'i' (also 'j' suffixes)."""
    s = text.strip().replace(" ", "")
    s = s.replace("i", "j")
    if s.endswith("j") and s[:-1] in ("", "+", "-"):
        s = s[:-1] + "1j"
    try:
        return complex(s)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"cannot parse complex number {text!r}") from exc


def parse_spin(text: str) -> float:
    """Accepts '1/2' style fractions and decimals."""
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"cannot parse spin {text!r}") from exc


def _c2l(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def matrix_document(matrix: np.ndarray, metadata: dict) -> dict:
    """JSON-safe document: row-major [re, im] entries plus metadata."""
    rows, cols = matrix.shape
    meta = dict(metadata)
    meta.setdefault("tool_version", __version__)
    return {
        "dims": [rows, cols],
        "entries": [_c2l(z) for z in matrix.ravel()],
        "metadata": meta,
    }


def document_matrix(doc: dict) -> np.ndarray:
    rows, cols = doc["dims"]
    flat = np.array([complex(re, im) for re, im in doc["entries"]])
    if flat.size != rows * cols:
        raise ParameterDomainError("entry count does not match dims")
    return flat.reshape(rows, cols)


def dump_document(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def write_document(path: Path, doc: dict) -> None:
    path.write_text(dump_document(doc), encoding="utf-8")


def load_document(path: Path) -> dict:
    return json.loads(path.read_text(encoding="utf-8"))


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qybe",
                                description="q-deformed representations and R-matrices "
                                            "with numerical identity verification")
    p.add_argument("--version", action="version", version=f"qybe {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    rep = sub.add_parser("rep", help="emit generator matrices of one representation")
    rep.add_argument("--ell", type=parse_spin, help="spin (e.g. 1/2 or 0.5)")
    rep.add_argument("--q", type=parse_complex, help="deformation parameter a+bi")
    rep.add_argument("--basis", choices=["monomial", "orthonormal"], default="monomial")
    rep.add_argument("--cyclic", action="store_true", help="build a cyclic representation")
    rep.add_argument("--N", type=int, help="root-of-unity order (cyclic mode)")
    rep.add_argument("--alpha", type=parse_complex, default=0j)
    rep.add_argument("--beta", type=parse_complex, default=0j)
    rep.add_argument("--lam", type=parse_complex, default=0j)
    rep.add_argument("--out", type=Path, required=True, help="output directory")

    rmx = sub.add_parser("rmatrix", help="assemble an R-matrix and export it")
    rmx.add_argument("--l1", type=parse_spin, required=True)
    rmx.add_argument("--l2", type=parse_spin, required=True)
    rmx.add_argument("--u", type=parse_complex, required=True)
    rmx.add_argument("--q", type=parse_complex)
    rmx.add_argument("--xxx", action="store_true", help="rational (undeformed) mode")
    rmx.add_argument("--basis", choices=["monomial", "orthonormal"], default="orthonormal")
    rmx.add_argument("--out", type=Path, required=True, help="output file")

    ver = sub.add_parser("verify", help="run identity-verification suites")
    ver.add_argument("suite", choices=["ybe", "rll", "unitarity", "casimir", "cyclic", "all"])
    ver.add_argument("--seed", type=int, default=None)
    ver.add_argument("--samples", type=int, default=10)
    ver.add_argument("--tol", type=float, default=None)
    ver.add_argument("--N", type=int, default=3, help="root-of-unity order for cyclic suites")
    ver.add_argument("--json", type=Path, default=None, help="write the JSON report here")
    return p


def _cmd_rep(args) -> int:
    out: Path = args.out
    if args.cyclic:
        if args.N is None:
            print("error: --cyclic requires --N", file=sys.stderr)
            return EXIT_VALIDATION
        if args.N % 2 == 0:
            print("error: N must be odd", file=sys.stderr)
            return EXIT_VALIDATION
        spec = cy.CyclicRepSpec(args.alpha, args.beta, args.lam, args.N)
        triple = cy.build_cyclic_rep(spec)
        meta = {"cyclic": {"N": args.N, "alpha": _c2l(args.alpha),
                           "beta": _c2l(args.beta), "lam": _c2l(args.lam)},
                "q": _c2l(spec.q.value), "basis_tag": triple.basis_tag}
    else:
        if args.ell is None or args.q is None:
            print("error: spin mode requires --ell and --q", file=sys.stderr)
            return EXIT_VALIDATION
        q = DeformationParameter.generic(args.q)
        triple = build_spin_rep(args.ell, q, args.basis)
        meta = {"ell": args.ell, "q": _c2l(q.value), "basis_tag": triple.basis_tag}
    out.mkdir(parents=True, exist_ok=True)
    for name, mat in (("sp", triple.sp), ("sm", triple.sm), ("qs1", triple.qs(1))):
        write_document(out / f"{name}.json", matrix_document(np.asarray(mat), {**meta, "operator": name}))
    print(f"wrote sp.json, sm.json, qs1.json to {out}")
    return EXIT_OK


def _cmd_rmatrix(args) -> int:
    if args.xxx:
        q = None
        mode = "xxx"
    else:
        if args.q is None:
            print("error: either --q or --xxx is required", file=sys.stderr)
            return EXIT_VALIDATION
        q = DeformationParameter.generic(args.q)
        mode = "xxz"
    rm = assemble_R(args.l1, args.l2, args.u, q, mode=mode, basis=args.basis)
    meta = {"spins": [args.l1, args.l2], "u": _c2l(args.u),
            "q": None if q is None else _c2l(q.value), "mode": mode,
            "basis_tag": rm.basis_tag, "normalization": rm.normalization}
    args.out.parent.mkdir(parents=True, exist_ok=True)
    write_document(args.out, matrix_document(rm.matrix, meta))
    print(f"wrote {rm.dim}x{rm.dim} R-matrix to {args.out}")
    return EXIT_OK


GOLDEN_PAIRS = ((0.5, 0.5), (0.5, 1.0), (1.0, 1.0))


def _run_suite(suite: str, cfg: ToleranceConfig, order: int,
               perturb: float) -> list[verify.ResidualReport]:
    reports: list[verify.ResidualReport] = []
    if suite in ("ybe", "all"):
        reports.append(verify.check_fundamental_ybe(cfg, mode="xxz", perturb=perturb))
        reports.append(verify.check_fundamental_ybe(cfg, mode="xxx", perturb=perturb))
        for l1, l2 in GOLDEN_PAIRS:
            reports.extend(verify.check_decomposed_ybe(l1, l2, cfg, perturb=perturb))
    if suite in ("rll", "all"):
        for ell in (0.5, 1.0, 1.5):
            reports.append(verify.check_rll(ell, cfg))
        reports.append(verify.check_rll(cy.CyclicRepSpec(0.31 + 0.11j, -0.42 + 0.2j,
                                                         0.17 - 0.23j, 3), cfg))
    if suite in ("unitarity", "all"):
        for l1, l2 in GOLDEN_PAIRS:
            reports.append(verify.check_unitarity(l1, l2, cfg, perturb=perturb))
        reports.append(verify.check_unitarity(0.5, 0.5, cfg, mode="xxx", perturb=perturb))
    if suite in ("casimir", "all"):
        for l1, l2 in GOLDEN_PAIRS:
            reports.append(verify.check_casimir_spectrum(l1, l2, cfg))
    if suite in ("cyclic", "all"):
        reports.append(verify.check_cyclic_centrality(order, cfg))
        reports.append(verify.check_phi_identity(order, cfg))
        reports.append(verify.check_shift_laws(order, cfg))
        reports.append(verify.check_cyclic_r_ratio(order, cfg))
        reports.append(verify.check_partial_r(order, cfg))
    if suite == "all":
        reports.append(verify.check_branch_independence(0.5, 1.0, cfg))
        reports.append(verify.check_branch_independence(1.0, 1.0, cfg))
    return reports


def _cmd_verify(args) -> int:
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("QYBE_SEED", DEFAULT_SEED))
    if args.N % 2 == 0:
        print("error: N must be odd", file=sys.stderr)
        return EXIT_VALIDATION
    kwargs = {"sample_count": args.samples, "rng_seed": seed}
    if args.tol is not None:
        kwargs["abs_tol"] = args.tol
        kwargs["rel_tol"] = args.tol
    cfg = ToleranceConfig(**kwargs)
    perturb = float(os.environ.get("QYBE_PERTURB", "0") or 0)
    reports = _run_suite(args.suite, cfg, args.N, perturb)
    for rep in reports:
        print(rep.line())
    n_fail = sum(not rep.passed for rep in reports)
    print(f"{len(reports) - n_fail}/{len(reports)} identities passed (seed {seed})")
    if args.json is not None:
        args.json.parent.mkdir(parents=True, exist_ok=True)
        payload = {"seed": seed, "samples": args.samples, "suite": args.suite,
                   "tool_version": __version__,
                   "reports": [rep.to_dict() for rep in reports]}
        args.json.write_text(json.dumps(payload, sort_keys=True, indent=1) + "\n",
                             encoding="utf-8")
    return EXIT_OK if n_fail == 0 else EXIT_VERIFY_FAIL


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "rep":
            return _cmd_rep(args)
        if args.command == "rmatrix":
            return _cmd_rmatrix(args)
        if args.command == "verify":
            return _cmd_verify(args)
    except PoleAtSector as exc:
        print(f"error: spectral parameter at a pole (sector {exc.sector})", file=sys.stderr)
        return EXIT_DEGENERATE
    except SingularBasis as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (ParameterDomainError, UnsupportedPair, BadSpin, WrongMode, OrderMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except QybeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY_FAIL
    parser.error("no command given")
    return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
