"""Command-line interface.

Reports go to standard output as JSON lines; human-readable summaries go to
standard error.  Exit status: 0 on success (including not-applicable
verdicts), 1 if any check is violated, 2 on usage or validation errors.

Examples::

    schemebounds generate cyclotomic 31 5 > c31_5.scm
    schemebounds check t1 --field 2 < c31_5.scm
    schemebounds info --gen johnson:5:2
    schemebounds rkmin --field 5 --gen cyclotomic:31:3
    schemebounds corpus manifest.jsonl
"""

from __future__ import annotations

import argparse
import contextlib
import json
import logging
import sys
from dataclasses import dataclass
from typing import Optional, TextIO

from . import __version__
from .bounds import (
    NOT_APPLICABLE,
    RATIONALS,
    VIOLATED,
    BoundReport,
    check_ha003,
    check_theorem_110707c,
    check_theorem_160707a,
    check_theorem_180707b,
    check_theorem_200707b,
    write_witness,
)
from .errors import NotRational, SchemeBoundsError, SemisimplicityViolated
from .generators import (
    complete_graph,
    cyclic_group_table,
    cyclotomic,
    from_group,
    hamming,
    johnson,
    symmetric_group_table,
)
from .gf import parse_field, rkmin_search
from .scheme import (
    Scheme,
    format_scheme,
    is_commutative,
    is_primitive,
    is_symmetric,
    is_thin,
    parse_scheme,
    read_scheme,
)
from .spectral import spectral_data

__all__ = ["RunConfig", "main", "corpus_run", "make_scheme", "default_manifest"]

log = logging.getLogger("schemebounds")

EXIT_OK, EXIT_VIOLATED, EXIT_USAGE = 0, 1, 2

THEOREMS = {
    "t1": "t180707b",
    "t180707b": "t180707b",
    "t2": "t160707a",
    "t160707a": "t160707a",
    "t200707b": "t200707b",
    "t110707c": "t110707c",
    "ha003": "ha003",
}

GENERATORS = {
    "cyclotomic": (cyclotomic, 2),
    "johnson": (johnson, 2),
    "hamming": (hamming, 2),
    "cyclic": (lambda m: from_group(cyclic_group_table(m), name=f"cyclic({m})"), 1),
    "symmetric": (lambda k: from_group(symmetric_group_table(k), name=f"symmetric({k})"), 1),
    "complete": (complete_graph, 1),
}


@dataclass
class RunConfig:
    command: str
    scheme_path: Optional[str] = None
    generator: Optional[str] = None
    theorem: Optional[str] = None
    field: Optional[str] = None
    prime: Optional[int] = None
    budget: Optional[int] = None
    threads: int = 1
    seed: int = 0
    trials: int = 200
    output: Optional[str] = None
    witness_dir: Optional[str] = None
    mode: str = "auto"
    tol: float = 1e-9

    def __post_init__(self):
        if self.scheme_path is not None and self.generator is not None:
            raise ValueError("give either a scheme file or a generator spec, not both")
        if self.budget is not None and self.budget < 1:
            raise ValueError("budget must be positive")
        if self.threads < 1:
            raise ValueError("threads must be positive")


def make_scheme(spec: str) -> Scheme:
    """Build a scheme from ``name:arg[:arg]``, e.g. ``cyclotomic:31:5``."""
    name, *args = spec.replace(" ", ":").split(":")
    if name not in GENERATORS:
        raise ValueError(f"unknown generator {name!r}; choose from {sorted(GENERATORS)}")
    fn, arity = GENERATORS[name]
    if len(args) != arity:
        raise ValueError(f"generator {name} takes {arity} integer argument(s)")
    return fn(*(int(a) for a in args))


def _load_scheme(cfg: RunConfig, stdin: TextIO) -> Scheme:
    if cfg.generator:
        return make_scheme(cfg.generator)
    if cfg.scheme_path and cfg.scheme_path != "-":
        return read_scheme(cfg.scheme_path)
    return parse_scheme(stdin.read(), name="<stdin>")


def _envelope(kind: str, payload: dict) -> dict:
    return {"kind": kind, "version": __version__, **payload}


def _scheme_summary(sch: Scheme) -> dict:
    out = {
        "scheme": sch.name,
        "scheme_sha256": sch.digest(),
        "n": sch.n,
        "s": sch.s,
        "valencies": [int(d) for d in sch.valencies],
        "commutative": is_commutative(sch),
        "symmetric": is_symmetric(sch),
        "thin": is_thin(sch),
    }
    out["primitive"] = is_primitive(sch) if sch.n >= 2 else None
    return out


def run_check(sch: Scheme, cfg: RunConfig) -> BoundReport:
    theorem = THEOREMS[cfg.theorem]
    if theorem in ("t180707b", "t200707b"):
        if cfg.field is None:
            raise ValueError(f"{cfg.theorem} needs --field")
        fn = check_theorem_180707b if theorem == "t180707b" else check_theorem_200707b
        return fn(sch, parse_field(cfg.field), budget=cfg.budget, threads=cfg.threads)
    if theorem == "t110707c":
        if cfg.field is None:
            raise ValueError("t110707c needs --field (p^f or Q)")
        field = RATIONALS if cfg.field.upper() == RATIONALS else parse_field(cfg.field)
        return check_theorem_110707c(sch, field, trials=cfg.trials, seed=cfg.seed)
    if cfg.prime is None:
        raise ValueError(f"{cfg.theorem} needs --prime")
    if theorem == "t160707a":
        return check_theorem_160707a(sch, cfg.prime)
    try:
        return check_ha003(sch, cfg.prime, budget=cfg.budget, threads=cfg.threads)
    except (NotRational, SemisimplicityViolated) as exc:
        return BoundReport("ha003", {"scheme": sch.name, "scheme_sha256": sch.digest(),
                                     "n": sch.n, "s": sch.s, "prime": cfg.prime},
                           verdict=NOT_APPLICABLE, reason=f"{type(exc).__name__}: {exc}")


def _summarize(report: BoundReport) -> str:
    line = f"{report.theorem} on {report.inputs.get('scheme')}: {report.verdict}"
    if report.computed.get("equality"):
        line += " with equality"
    if report.reason:
        line += f" ({report.reason})"
    return line


def _emit(out: TextIO, record: dict) -> None:
    out.write(json.dumps(record, sort_keys=True, default=str) + "\n")


# ---- corpus runs -----------------------------------------------------------


def default_manifest() -> list[dict]:
    """All generators with q in {2, 3, 4, 5} and p in {2, 3, 5, 7}."""
    sources = [
        "cyclotomic:31:5", "cyclotomic:13:4", "cyclotomic:7:3", "johnson:5:2",
        "johnson:7:2", "hamming:3:2", "hamming:2:3", "cyclic:5", "cyclic:7",
        "symmetric:3", "complete:4", "complete:5",
    ]
    checks = []
    for q in ("2", "3", "4", "5"):
        checks += [{"theorem": "t1", "field": q}, {"theorem": "t200707b", "field": q},
                   {"theorem": "t110707c", "field": q, "trials": 50}]
    for p in (2, 3, 5, 7):
        checks += [{"theorem": "t2", "prime": p}, {"theorem": "ha003", "prime": p}]
    return [{"source": src, "checks": checks} for src in sources]


def _read_manifest(path: str) -> list[dict]:
    entries = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                entry = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
            if not isinstance(entry, dict) or "source" not in entry:
                raise ValueError(f"{path}:{lineno}: expected an object with a 'source'")
            entries.append(entry)
    return entries


def _entry_scheme(source: str) -> Scheme:
    name = source.replace(" ", ":").split(":", 1)[0]
    if name in GENERATORS:
        return make_scheme(source)
    return read_scheme(source)


def corpus_run(entries: list[dict], base: RunConfig, out: TextIO = sys.stdout,
               err: TextIO = sys.stderr) -> dict:
    """Run every check of every manifest entry; errors are reported per entry."""
    verdicts = {"holds": 0, "violated": 0, "not-applicable": 0, "error": 0}
    for entry in entries:
        source = entry["source"]
        try:
            sch = _entry_scheme(source)
        except (SchemeBoundsError, ValueError, OSError) as exc:
            verdicts["error"] += 1
            _emit(out, _envelope("error", {"source": source, "error": f"{type(exc).__name__}: {exc}"}))
            err.write(f"{source}: {type(exc).__name__}: {exc}\n")
            continue
        for check in entry.get("checks", []):
            cfg = RunConfig(command="check", theorem=check.get("theorem"),
                            field=check.get("field"), prime=check.get("prime"),
                            budget=check.get("budget", base.budget), threads=base.threads,
                            seed=check.get("seed", base.seed),
                            trials=check.get("trials", base.trials))
            try:
                if cfg.theorem not in THEOREMS:
                    raise ValueError(f"unknown theorem {cfg.theorem!r}")
                report = run_check(sch, cfg)
            except (SchemeBoundsError, ValueError) as exc:
                verdicts["error"] += 1
                _emit(out, _envelope("error", {"source": source, "check": check,
                                               "error": f"{type(exc).__name__}: {exc}"}))
                continue
            verdicts[report.verdict] += 1
            _emit(out, _envelope("report", {"source": source, **report.to_dict()}))
            if report.verdict == VIOLATED and base.witness_dir:
                write_witness(report, base.witness_dir)
    summary = _envelope("summary", {"entries": len(entries), "verdicts": verdicts})
    _emit(out, summary)
    err.write(f"corpus: {len(entries)} entries, {verdicts}\n")
    return summary


# ---- argument parsing --------------------------------------------------------


def _add_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("scheme", nargs="?", help="scheme file (default: standard input)")
    p.add_argument("-g", "--gen", dest="generator", metavar="SPEC",
                   help="generate the scheme instead, e.g. cyclotomic:31:5")


def _add_search(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget", type=int, help="maximum number of projective classes")
    p.add_argument("--threads", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="schemebounds", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-o", "--output", help="write JSON lines here instead of stdout")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="emit a scheme in the text format")
    g.add_argument("name", choices=sorted(GENERATORS))
    g.add_argument("args", nargs="+", type=int)

    v = sub.add_parser("validate", help="check the scheme axioms")
    _add_source(v)

    i = sub.add_parser("info", help="structure and spectral invariants")
    _add_source(i)
    i.add_argument("--mode", choices=("auto", "exact", "float"), default="auto")
    i.add_argument("--tol", type=float, default=1e-9)

    r = sub.add_parser("rkmin", help="minimum rank of F_q S outside F_q J")
    _add_source(r)
    r.add_argument("--field", required=True, help="p, p^f or a prime power q")
    _add_search(r)

    c = sub.add_parser("check", help="run one theorem check")
    c.add_argument("theorem_pos", nargs="?", metavar="THEOREM",
                   help="one of " + ", ".join(sorted(THEOREMS)))
    c.add_argument("scheme", nargs="?", help="scheme file (default: standard input)")
    c.add_argument("-g", "--gen", dest="generator", metavar="SPEC")
    c.add_argument("--theorem", choices=sorted(THEOREMS))
    c.add_argument("--field", help="p, p^f, q, or Q (t110707c only)")
    c.add_argument("--prime", type=int)
    c.add_argument("--trials", type=int, default=200)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--witness-dir", default=".",
                   help="directory for violation witness files")
    _add_search(c)

    m = sub.add_parser("corpus", help="run a manifest of checks")
    m.add_argument("manifest", nargs="?", help="JSON-lines manifest file")
    m.add_argument("--default", action="store_true", help="use the built-in manifest")
    m.add_argument("--witness-dir", default=None)
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--trials", type=int, default=200)
    _add_search(m)
    return parser


def _config(ns: argparse.Namespace) -> RunConfig:
    theorem = getattr(ns, "theorem", None) or getattr(ns, "theorem_pos", None)
    if getattr(ns, "theorem", None) and getattr(ns, "theorem_pos", None):
        # with --theorem the first positional is the scheme file
        if ns.scheme is not None:
            raise ValueError("theorem given twice")
        ns.scheme = ns.theorem_pos
    return RunConfig(
        command=ns.command,
        scheme_path=getattr(ns, "scheme", None),
        generator=getattr(ns, "generator", None),
        theorem=theorem,
        field=getattr(ns, "field", None),
        prime=getattr(ns, "prime", None),
        budget=getattr(ns, "budget", None),
        threads=getattr(ns, "threads", 1),
        seed=getattr(ns, "seed", 0),
        trials=getattr(ns, "trials", 200),
        output=ns.output,
        witness_dir=getattr(ns, "witness_dir", None),
        mode=getattr(ns, "mode", "auto"),
        tol=getattr(ns, "tol", 1e-9),
    )


def _dispatch(cfg: RunConfig, ns, out: TextIO, err: TextIO, stdin: TextIO) -> int:
    if cfg.command == "generate":
        sch = make_scheme(":".join([ns.name, *map(str, ns.args)]))
        out.write(format_scheme(sch))
        return EXIT_OK

    if cfg.command == "corpus":
        if ns.default == bool(ns.manifest):
            raise ValueError("give a manifest file or --default (exactly one)")
        entries = default_manifest() if ns.default else _read_manifest(ns.manifest)
        summary = corpus_run(entries, cfg, out, err)
        return EXIT_VIOLATED if summary["verdicts"]["violated"] else EXIT_OK

    sch = _load_scheme(cfg, stdin)
    if cfg.command == "validate":
        _emit(out, _envelope("scheme", _scheme_summary(sch)))
        err.write(f"{sch.name}: valid scheme, n={sch.n}, s={sch.s}\n")
        return EXIT_OK

    if cfg.command == "info":
        spec = spectral_data(sch, mode=cfg.mode, tol=cfg.tol)
        record = _scheme_summary(sch)
        record.update(spec.to_dict())
        _emit(out, _envelope("info", record))
        err.write(f"{sch.name}: m_min={spec.m_min}, Frame number={spec.frame}, "
                  f"rational={spec.rational}\n")
        return EXIT_OK

    if cfg.command == "rkmin":
        rep = rkmin_search(sch, parse_field(cfg.field), budget=cfg.budget, threads=cfg.threads)
        _emit(out, _envelope("rkmin", {"scheme": sch.name, "scheme_sha256": sch.digest(),
                                       "n": sch.n, "s": sch.s, **rep.to_dict()}))
        err.write(f"{sch.name}: rk_min over F_{rep.field.q} = {rep.rkmin}"
                  f"{'' if rep.exhaustive else ' (search truncated)'}\n")
        return EXIT_OK

    if cfg.command == "check":
        if cfg.theorem not in THEOREMS:
            raise ValueError("name a theorem: " + ", ".join(sorted(THEOREMS)))
        report = run_check(sch, cfg)
        _emit(out, _envelope("report", report.to_dict()))
        err.write(_summarize(report) + "\n")
        if report.verdict == VIOLATED:
            if cfg.witness_dir:
                err.write(f"witness written to {write_witness(report, cfg.witness_dir)}\n")
            return EXIT_VIOLATED
        return EXIT_OK
    raise ValueError(f"unknown command {cfg.command}")  # pragma: no cover


def main(argv=None, stdin: TextIO = None, stdout: TextIO = None, stderr: TextIO = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(stderr), contextlib.redirect_stdout(stdout):
            ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING,
                        stream=stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = _config(ns)
        if cfg.output:
            with open(cfg.output, "w") as fh:
                return _dispatch(cfg, ns, fh, stderr, stdin)
        return _dispatch(cfg, ns, stdout, stderr, stdin)
    except (SchemeBoundsError, ValueError, OSError) as exc:
        stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_entry()
