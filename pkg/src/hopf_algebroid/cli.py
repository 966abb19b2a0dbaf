"""Command-line front end: ``validate``, ``check-sigma`` and ``verify`` on a JSON instance config.

Exit codes: 0 pass, 1 fail, 2 input error, 3 inconclusive at the degree bound.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .bialgebroid import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    SUITES,
    CheckEntry,
    CheckReport,
    Verifier,
    base_annotations,
    run_suites,
)
from .field import PrimeField, parse_field
from .quasigroup import (
    PiBijection,
    Quasigroup,
    TernaryOp,
    abelian_ternary,
    builtin_qg5,
    degree_map,
    validate_latin,
    validate_ternary,
)
from .ringcore import AlgebraR, FunctionAlgebra, InputError, preset_algebra
from .sigma import SigmaTensor, build_from_quasigroup

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2, 3


@dataclass
class InstanceConfig:
    raw: dict
    field_spec: str = "rational"
    algebra_r: object = "base"
    quasigroup: dict = field(default_factory=lambda: {"kind": "builtin_qg5"})
    ternary: object = None
    pi: list | None = None
    degree_bound: int = 4
    suites: list | None = None
    seed: int = 0
    threads: int = 1
    corrupt: dict | None = None

    @property
    def digest(self) -> str:
        # worker count does not change results, so it stays out of the digest
        content = {k: v for k, v in self.raw.items() if k != "threads"}
        canon = json.dumps(content, sort_keys=True, separators=(",", ":"))
        return "sha256:" + hashlib.sha256(canon.encode()).hexdigest()


_KEYS = {"field", "algebra_r", "quasigroup", "ternary", "pi", "degree_bound", "suites", "seed", "threads",
         "corrupt"}


_ATTR = {"field": "field_spec"}


def parse_config(raw: dict) -> InstanceConfig:
    if not isinstance(raw, dict):
        raise InputError("config: top level must be an object")
    unknown = sorted(set(raw) - _KEYS)
    if unknown:
        raise InputError(f"config: unknown key {unknown[0]!r}")
    cfg = InstanceConfig(raw=raw)
    for key in _KEYS:
        if key in raw:
            setattr(cfg, _ATTR.get(key, key), raw[key])
    if not isinstance(cfg.quasigroup, dict) or "kind" not in cfg.quasigroup:
        raise InputError("config.quasigroup: object with a 'kind' expected")
    if not isinstance(cfg.degree_bound, int) or cfg.degree_bound < 0:
        raise InputError("config.degree_bound: non-negative integer expected")
    if cfg.suites is not None:
        bad = [s for s in cfg.suites if s not in SUITES]
        if bad:
            raise InputError(f"config.suites: unknown suite {bad[0]!r}")
    return cfg


def load_config(path: str) -> InstanceConfig:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from None
    return parse_config(raw)


# instance construction ----------------------------------------------------------

def build_algebra(spec) -> AlgebraR:
    # structure data stays rational; a gf:p field only switches the membership solver
    if isinstance(spec, str):
        return preset_algebra(spec)
    if isinstance(spec, dict) and "mul" in spec and "unit" in spec:
        return AlgebraR(parse_field("rational"), spec["mul"], spec["unit"], name=spec.get("name", "custom"))
    raise InputError("config.algebra_r: preset name or {'mul', 'unit'} expected")


def build_quasigroup(spec: dict) -> Quasigroup:
    kind = spec.get("kind")
    if kind == "builtin_qg5":
        return builtin_qg5()
    if kind == "abelian":
        n = spec.get("n")
        if not isinstance(n, int) or n < 2:
            raise InputError("config.quasigroup.n: integer >= 2 expected")
        return Quasigroup(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)))
    if kind == "table":
        return Quasigroup.from_table(spec.get("table", []))
    raise InputError(f"config.quasigroup.kind: unknown kind {kind!r}")


def build_ternary(spec, n: int) -> TernaryOp:
    if spec is None or spec == {"kind": "abelian_default"}:
        return abelian_ternary(n)
    if isinstance(spec, dict) and spec.get("kind") == "table":
        spec = spec.get("table")
    if isinstance(spec, list):
        m = TernaryOp(spec)
        if m.n != n:
            raise InputError(f"config.ternary: size {m.n} does not match the quasigroup size {n}")
        return m
    raise InputError("config.ternary: {'kind': 'abelian_default'} or an n x n x n table expected")


def build_pi(spec, n: int) -> PiBijection:
    if spec is None:
        return PiBijection.identity(n)
    pi = PiBijection(tuple(spec))
    if len(pi.map) != n:
        raise InputError(f"config.pi: length {len(pi.map)} does not match the quasigroup size {n}")
    return pi


def apply_corruption(s: SigmaTensor, spec: dict) -> SigmaTensor:
    """Test hook: replace one sigma entry by the given per-point R-vectors."""
    try:
        key = tuple(spec["entry"])
        value = s.L.from_values(spec["values"])
    except (KeyError, TypeError) as e:
        raise InputError(f"config.corrupt: {e}") from None
    if len(key) != 4 or not all(0 <= k < s.n for k in key):
        raise InputError("config.corrupt.entry: four indices in range expected")
    return s.with_entry(key, value)


def _t_system_defect(deg, L: FunctionAlgebra) -> dict | None:
    basis = L.basis_elements()
    for a in range(deg.size):
        T = deg.T(a)
        if T.then(deg.T_inv(a)).point_perm != tuple(range(L.npoints)):
            return {"a": a, "reason": "T o T^-1 is not the identity"}
        if any(T.apply(f * g) != T.apply(f) * T.apply(g) for f in basis for g in basis):
            return {"a": a, "reason": "T is not multiplicative"}
    return None


def validation_entries(cfg: InstanceConfig) -> tuple[list[CheckEntry], tuple | None]:
    """Runs the input checks; returns the entries and (q, m, pi) if all passed."""
    q = build_quasigroup(cfg.quasigroup)
    out = []
    cex = validate_latin(q)
    out.append(CheckEntry("validate/latin", "every row and every column of the Cayley table is a permutation",
                          PASS if cex is None else FAIL, witness=None if cex is None else cex.to_json()))
    m = build_ternary(cfg.ternary, q.n)
    viol = validate_ternary(m)
    out.append(CheckEntry("validate/ternary", "the ternary operation satisfies QG1-QG5",
                          FAIL if viol else PASS, witness=[v.to_json() for v in viol] or None))
    pi = build_pi(cfg.pi, q.n)
    out.append(CheckEntry("validate/pi", "pi is a bijection QG -> M", PASS))
    if cex is not None:
        return out, None
    deg = degree_map(q)
    L = FunctionAlgebra(q.n, build_algebra(cfg.algebra_r))
    bad = _t_system_defect(deg, L)
    out.append(CheckEntry("validate/t-system", "each T_{deg a} is an algebra automorphism of L with inverse",
                          FAIL if bad else PASS, witness=bad))
    if any(e.status != PASS for e in out):
        return out, None
    return out, (q, m, pi)


def build_sigma(cfg: InstanceConfig, qmp) -> SigmaTensor:
    q, m, pi = qmp
    s = build_from_quasigroup(q, m, pi, build_algebra(cfg.algebra_r))
    if cfg.corrupt:
        s = apply_corruption(s, cfg.corrupt)
    return s


# output ---------------------------------------------------------------------------

def _slug(cid: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]+", "_", cid).strip("_")


def _cert_json(cert):
    if isinstance(cert, list):
        return [c.to_json() for c in cert]
    return cert.to_json()


def write_json(path: Path, data) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")


def assemble(cfg: InstanceConfig, command: str, entries: list, out_dir: Path | None,
             cert_dir: Path | None, extra: dict | None = None) -> dict:
    checks = []
    for e in sorted(entries, key=lambda e: e.id):
        ref = None
        if e.certificate is not None and cert_dir is not None:
            path = cert_dir / f"{_slug(e.id)}.json"
            write_json(path, _cert_json(e.certificate))
            ref = str(path.relative_to(out_dir)) if out_dir and path.is_relative_to(out_dir) else str(path)
        checks.append(e.to_json(ref))
    report = CheckReport(list(entries))
    data = {"instance": cfg.digest, "command": command, "status": report.status,
            "bounds": {"D": cfg.degree_bound}, "checks": checks}
    if extra:
        data.update(extra)
    if out_dir is not None:
        write_json(out_dir / "report.json", data)
    return data


def exit_code(status: str) -> int:
    return {PASS: EXIT_PASS, FAIL: EXIT_FAIL, INCONCLUSIVE: EXIT_INCONCLUSIVE}[status]


def render_text(data: dict) -> str:
    lines = [f"instance {data['instance']}", f"command  {data['command']}  D={data['bounds']['D']}"]
    if "radical_dim" in data:
        lines.append(f"radical_dim(R) = {data['radical_dim']}")
    for note in data.get("annotations", []):
        lines.append(f"note: {note}")
    width = max((len(c["id"]) for c in data["checks"]), default=0)
    for c in data["checks"]:
        line = f"  {c['status']:<22} {c['id']:<{width}}"
        if c["status"] == FAIL and "witness" in c:
            line += "  witness=" + json.dumps(c["witness"], sort_keys=True)
        lines.append(line)
    lines.append(f"overall: {data['status']}")
    return "\n".join(lines)


# commands -------------------------------------------------------------------------

def cmd_validate(cfg: InstanceConfig, args) -> dict:
    entries, _ = validation_entries(cfg)
    return assemble(cfg, "validate", entries, args.output_dir, None)


def cmd_check_sigma(cfg: InstanceConfig, args) -> dict:
    from .bialgebroid import sigma_suite

    entries, qmp = validation_entries(cfg)
    if qmp is None:
        return assemble(cfg, "check-sigma", entries, args.output_dir, None)
    s = build_sigma(cfg, qmp)
    if args.output_dir is not None:
        write_json(args.output_dir / "sigma.json", s.to_json())
    entries += sigma_suite(s)
    return assemble(cfg, "check-sigma", entries, args.output_dir, None, base_annotations(s.L.R))


def cmd_verify(cfg: InstanceConfig, args) -> dict:
    entries, qmp = validation_entries(cfg)
    if qmp is None:
        return assemble(cfg, "verify", entries, args.output_dir, None)
    s = build_sigma(cfg, qmp)
    fld = parse_field(cfg.field_spec)
    modulus = fld.p if isinstance(fld, PrimeField) else None
    v = Verifier(s, cfg.degree_bound, seed=cfg.seed, threads=cfg.threads, modulus=modulus)
    suites = cfg.suites or list(SUITES)
    entries += run_suites(v, suites).entries
    out = args.output_dir
    if out is not None:
        write_json(out / "sigma.json", s.to_json())
        if v.rigidity is not None:
            write_json(out / "rigidity.json", v.rigidity.to_json())
    cert_dir = args.certificates_dir or (out / "certificates" if out is not None else None)
    return assemble(cfg, "verify", entries, out, cert_dir, base_annotations(s.L.R))


COMMANDS = {"validate": cmd_validate, "check-sigma": cmd_check_sigma, "verify": cmd_verify}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hopf-algebroid", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("config", help="instance config (JSON)")
        sp.add_argument("--field", help="rational | gf:p (overrides config)")
        sp.add_argument("--degree-bound", type=int, help="membership degree bound D (default 4)")
        sp.add_argument("--suite", action="append", choices=SUITES, help="restrict to a suite (repeatable)")
        sp.add_argument("--threads", type=int, help="worker threads (default 1)")
        sp.add_argument("--seed", type=int, help="seed for sampled checks (default 0)")
        sp.add_argument("--output-dir", type=Path, help="write report.json and friends here")
        sp.add_argument("--certificates-dir", type=Path, help="default: OUTPUT_DIR/certificates")
        sp.add_argument("--format", choices=("json", "text"), default="text")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        for attr, key in (("field", "field"), ("degree_bound", "degree_bound"), ("suite", "suites"),
                          ("threads", "threads"), ("seed", "seed")):
            val = getattr(args, attr)
            if val is not None:
                setattr(cfg, _ATTR.get(key, key), val)
                cfg.raw = {**cfg.raw, key: val}
        if cfg.threads < 1:
            raise InputError("threads must be at least 1")
        parse_field(cfg.field_spec)
        data = COMMANDS[args.command](cfg, args)
    except (InputError, ValueError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(render_text(data))
    return exit_code(data["status"])


if __name__ == "__main__":
    sys.exit(main())
