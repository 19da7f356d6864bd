"""Command-line front end: keys, encryption, KEM, sizes, estimates and the distance experiment."""

from __future__ import annotations

import argparse
import hashlib
import math
import os
import secrets
import shlex
import sys
from typing import Sequence

from . import mrd, wire
from .estimator import OMEGA, discrepancy, minimum, scheme_security
from .params import REGISTRY, SEED_BYTES, ParameterError, SchemeParams, get_params, load_params_file
from .rank_linalg import InstanceTooLargeError
from .schemes import (
    DecryptionError,
    KemReject,
    decrypt,
    encrypt,
    kem_decapsulate,
    kem_encapsulate,
    keygen,
    message_bytes,
    message_from_bytes,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_REJECT = 3
EXIT_BREACH = 4


class UsageError(Exception):
    pass


class Reject(Exception):
    pass


class Breach(Exception):
    pass


# ---------------------------------------------------------------------------
# helpers


def resolve_params(value: str | None) -> SchemeParams:
    if value is None:
        raise UsageError("--params is required")
    if value.isdigit():
        try:
            return get_params(int(value))
        except ParameterError as exc:
            raise UsageError(str(exc)) from None
    if not os.path.isfile(value):
        raise UsageError(f"--params: no registry row or file named {value!r}")
    try:
        return load_params_file(value)
    except (ParameterError, ValueError) as exc:
        raise UsageError(f"{value}: {exc}") from None


def serializable(p: SchemeParams) -> SchemeParams:
    """Wire headers name a registry row, so other parameter sets cannot be written."""
    if p.row_id not in REGISTRY or REGISTRY[p.row_id] != p:
        raise UsageError("only registry parameter rows can be serialized")
    return p


def resolve_seed(args) -> bytes | None:
    """The explicit seed, or None for fresh randomness."""
    if args.seed is None:
        if args.deterministic:
            raise UsageError("--deterministic needs --seed")
        return None
    if not args.deterministic:
        raise UsageError("--seed is only accepted together with --deterministic")
    try:
        seed = bytes.fromhex(args.seed)
    except ValueError:
        raise UsageError("--seed must be hex") from None
    if len(seed) != SEED_BYTES:
        raise UsageError(f"--seed must be {2 * SEED_BYTES} hex digits")
    return seed


def subseed(seed: bytes, label: bytes) -> bytes:
    return hashlib.shake_256(label + seed).digest(SEED_BYTES)


def read_file(path: str | None, what: str) -> bytes:
    if path is None:
        raise UsageError(f"--{what} is required")
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def write_file(path: str, data: bytes) -> None:
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


def emit(args, data: bytes, default_suffix: str | None = None) -> None:
    """Write an encoded object to ``--out`` (or stdout)."""
    body = wire.to_format(data, args.format)
    if args.out:
        write_file(args.out if default_suffix is None else args.out + default_suffix, body)
    else:
        if args.format == "bin":
            sys.stdout.buffer.write(body)
        else:
            sys.stdout.write(body.decode("ascii"))


def load_object(path: str | None, what: str, parse, expect=None):
    raw = read_file(path, what)
    try:
        return parse(wire.from_format(raw), expect)
    except wire.FormatError as exc:
        raise UsageError(f"{path}: {exc}") from None


def decode_message(p: SchemeParams, raw: bytes, fmt: str) -> list[int]:
    if fmt == "hex":
        try:
            raw = bytes.fromhex(raw.decode("ascii").strip())
        except (UnicodeDecodeError, ValueError):
            raise UsageError("message file is not valid hex") from None
    try:
        return message_from_bytes(p, raw)
    except ValueError as exc:
        raise UsageError(f"bad message: {exc}") from None


# ---------------------------------------------------------------------------
# commands


def cmd_keygen(args) -> int:
    p = serializable(resolve_params(args.params))
    if not args.out:
        raise UsageError("keygen needs --out <prefix>; writes <prefix>.pk and <prefix>.sk")
    seed = resolve_seed(args)
    if seed is None:
        kp = keygen(p)
    else:
        kp = keygen(p, subseed(seed, b"sk"), subseed(seed, b"pk"))
    pk, sk = wire.serialize_pk(kp.pk), wire.serialize_sk(kp.sk)
    emit(args, pk, ".pk")
    emit(args, sk, ".sk")
    print(f"{p.name}: pk {len(pk)} bytes, sk {len(sk)} bytes", file=sys.stderr)
    return EXIT_OK


def cmd_encrypt(args) -> int:
    pk = load_object(args.pk, "pk", wire.deserialize_pk)
    p = pk.params
    msg = decode_message(p, read_file(args.msg, "msg"), args.format)
    seed = resolve_seed(args)
    ct = encrypt(pk, msg, seed)
    emit(args, wire.serialize_ct(ct))
    return EXIT_OK


def cmd_decrypt(args) -> int:
    pk = load_object(args.pk, "pk", wire.deserialize_pk)
    sk = load_object(args.sk, "sk", wire.deserialize_sk, pk.params)
    ct = load_object(args.ct, "ct", wire.deserialize_ct, pk.params)
    try:
        msg = decrypt(sk, pk, ct)
    except DecryptionError as exc:
        # honest ciphertexts always decode, so a failure here is never expected
        raise Breach(str(exc)) from None
    emit(args, message_bytes(pk.params, msg))
    return EXIT_OK


def cmd_encaps(args) -> int:
    if not args.out:
        raise UsageError("encaps needs --out for the encapsulation; the key goes to stdout")
    pk = load_object(args.pk, "pk", wire.deserialize_pk)
    out = kem_encapsulate(pk, resolve_seed(args))
    emit(args, wire.serialize_kem_ct(out.ciphertext, out.d))
    print(out.key.hex())
    return EXIT_OK


def cmd_decaps(args) -> int:
    pk = load_object(args.pk, "pk", wire.deserialize_pk)
    sk = load_object(args.sk, "sk", wire.deserialize_sk, pk.params)
    raw = read_file(args.ct, "ct")
    # the encapsulation is attacker-controlled, so any parse failure is a reject
    try:
        ct, d = wire.deserialize_kem_ct(wire.from_format(raw), pk.params)
    except wire.FormatError as exc:
        raise Reject(f"malformed encapsulation: {exc}") from None
    try:
        key = kem_decapsulate(sk, pk, ct, d)
    except KemReject as exc:
        raise Reject(str(exc)) from None
    if args.out:
        write_file(args.out, key.hex().encode("ascii") + b"\n")
    else:
        print(key.hex())
    return EXIT_OK


# -- estimate ----------------------------------------------------------------


def _fmt_bits(x: float) -> str:
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf"
    return repr(x)


def _fmt_params(params) -> str:
    return ",".join(f"{k}:{v}" for k, v in params.items())


def estimate_lines(p: SchemeParams, omega: float = OMEGA) -> list[str]:
    """``key=value`` lines: one per attack report, then a summary line."""
    sec = scheme_security(p, omega)
    lines = []
    for i, r in enumerate(sec.reports):
        fields = {
            "index": str(i),
            "problem": r.problem,
            "attack": r.attack,
            "family": r.family,
            "bits": _fmt_bits(r.bits),
            "raw_bits": _fmt_bits(r.raw_bits),
            "applicable": "1" if r.applicable else "0",
            "params": _fmt_params(r.params),
            "instance": r.instance.describe() if r.instance else "",
            "notes": "; ".join(r.notes),
        }
        lines.append("report " + " ".join(f"{k}={shlex.quote(v)}" for k, v in fields.items()))
    best = minimum(sec.reports)
    summary = {
        "scheme": p.name,
        "level": str(p.level),
        "omega": repr(omega),
        "min_bits": _fmt_bits(sec.bits),
        "min_attack": best.attack if best else "",
        "min_problem": best.problem if best else "",
        "families": ",".join(sorted({r.family for r in sec.reports if r.applicable})),
        "discrepancy": discrepancy(p, sec.bits) or "",
    }
    lines.append("summary " + " ".join(f"{k}={shlex.quote(v)}" for k, v in summary.items()))
    return lines


def parse_kv_lines(text: str) -> list[tuple[str, dict[str, str]]]:
    """Inverse of :func:`estimate_lines`."""
    out = []
    for line in text.splitlines():
        if not line.strip():
            continue
        tag, *tokens = shlex.split(line)
        out.append((tag, dict(tok.split("=", 1) for tok in tokens)))
    return out


def estimate_table(p: SchemeParams, omega: float = OMEGA) -> str:
    sec = scheme_security(p, omega)
    rows = [("problem", "attack", "family", "bits", "parameters")]
    for r in sec.reports:
        bits = f"{r.bits:.2f}" if r.applicable and math.isfinite(r.bits) else "n/a"
        rows.append((r.problem, r.attack, r.family, bits, _fmt_params(r.params)))
    widths = [max(len(row[i]) for row in rows) for i in range(4)]
    out = []
    for row in rows:
        out.append("  ".join(c.ljust(w) for c, w in zip(row, widths)) + "  " + row[4])
    best = minimum(sec.reports)
    out.append("")
    if best:
        out.append(f"{p.name}: minimum {sec.bits:.2f} bits ({best.attack} on {best.problem})")
    else:
        out.append(f"{p.name}: no applicable attack")
    flag = discrepancy(p, sec.bits)
    if flag:
        out.append(f"DISCREPANCY {flag}")
    return "\n".join(out)


def cmd_estimate(args) -> int:
    p = resolve_params(args.params)
    text = "\n".join(estimate_lines(p, args.omega)) if args.kv else estimate_table(p, args.omega)
    if args.out:
        write_file(args.out, text.encode() + b"\n")
    else:
        print(text)
    return EXIT_OK


# -- sizes -------------------------------------------------------------------


def sizes_table() -> str:
    rows = [("row", "scheme", "pk", "ct", "total")]
    for rid, p in sorted(REGISTRY.items()):
        rows.append((str(rid), p.name, str(p.pk_bytes), str(p.ct_bytes), str(p.pk_bytes + p.ct_bytes)))
    widths = [max(len(r[i]) for r in rows) for i in range(5)]
    return "\n".join(
        "  ".join(c.rjust(w) if i != 1 else c.ljust(w) for i, (c, w) in enumerate(zip(r, widths)))
        for r in rows
    )


def cmd_sizes(args) -> int:
    print(sizes_table())
    return EXIT_OK


# -- mrd-experiment ----------------------------------------------------------

SHAPE_FLAGS = ("m", "n1", "k1", "t1", "n2", "k2", "t2")


def cmd_mrd_experiment(args) -> int:
    given = {f: getattr(args, f) for f in SHAPE_FLAGS if getattr(args, f) is not None}
    if given:
        missing = [f for f in SHAPE_FLAGS if f not in given and f not in ("t1", "t2")]
        if missing:
            raise UsageError("missing --" + ", --".join(missing))
        given.setdefault("t1", given["n1"])
        given.setdefault("t2", given["n2"])
        try:
            grid = [mrd.Shape(**given)]
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        grid = None
    trials = 50 if args.trials is None else args.trials
    if trials < 0:
        raise UsageError("--trials must be non-negative")
    seed = resolve_seed(args) or secrets.token_bytes(SEED_BYTES)
    try:
        results = mrd.run_grid(seed, trials, grid)
    except InstanceTooLargeError as exc:
        raise UsageError(str(exc)) from None
    bad = 0
    for res in results:
        s = res.shape
        b = s.bounds
        line = f"{s.describe()}  regime={s.regime or 'none'}  trials={len(res.distances)}"
        if res.distances:
            line += f"  d_min={min(res.distances)} d_max={max(res.distances)} hist={res.histogram()}"
        if b is not None:
            line += f"  bounds=[{b[0]},{b[1]}] violations={len(res.violations)}"
            if res.distances:
                line += f" low_seen={int(res.attains_low)} high_seen={int(res.attains_high)}"
        print(line)
        bad += len(res.violations)
    if bad:
        raise Breach(f"{bad} instance(s) violate a proven distance bound")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--params", help="registry row id (1-9) or key=value parameter file")
    common.add_argument("--seed", help=f"{2 * SEED_BYTES} hex digits; requires --deterministic")
    common.add_argument("--deterministic", action="store_true", help="derive all randomness from --seed")
    common.add_argument("--format", choices=("hex", "bin"), default="hex", help="output encoding")
    common.add_argument("--out", help="output path (keygen: file prefix)")
    common.add_argument("--trials", type=int, help="number of experiment trials")

    ap = argparse.ArgumentParser(prog="rankcrypt", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True, metavar="command")

    sub.add_parser("keygen", parents=[common], help="generate a key pair")
    enc = sub.add_parser("encrypt", parents=[common], help="encrypt a message file")
    enc.add_argument("--pk", help="public key file")
    enc.add_argument("--msg", help="message file of k * ceil(m/8) bytes (encoded per --format)")
    dec = sub.add_parser("decrypt", parents=[common], help="decrypt a ciphertext")
    for name in ("pk", "sk", "ct"):
        dec.add_argument(f"--{name}")
    eca = sub.add_parser("encaps", parents=[common], help="encapsulate a shared key")
    eca.add_argument("--pk")
    dca = sub.add_parser("decaps", parents=[common], help="decapsulate a shared key")
    for name in ("pk", "sk", "ct"):
        dca.add_argument(f"--{name}")
    est = sub.add_parser("estimate", parents=[common], help="attack cost estimates")
    est.add_argument("--kv", action="store_true", help="machine-readable key=value lines")
    est.add_argument("--omega", type=float, default=OMEGA, help="linear algebra exponent")
    sub.add_parser("sizes", parents=[common], help="key and ciphertext sizes of every registry row")
    exp = sub.add_parser("mrd-experiment", parents=[common], help="brute-force minimum distances")
    for f in SHAPE_FLAGS:
        exp.add_argument(f"--{f}", type=int)
    return ap


COMMANDS = {
    "keygen": cmd_keygen,
    "encrypt": cmd_encrypt,
    "decrypt": cmd_decrypt,
    "encaps": cmd_encaps,
    "decaps": cmd_decaps,
    "estimate": cmd_estimate,
    "sizes": cmd_sizes,
    "mrd-experiment": cmd_mrd_experiment,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"rankcrypt: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Reject as exc:
        print(f"rankcrypt: rejected: {exc}", file=sys.stderr)
        return EXIT_REJECT
    except Breach as exc:
        print(f"rankcrypt: invariant breach: {exc}", file=sys.stderr)
        return EXIT_BREACH


if __name__ == "__main__":
    sys.exit(main())
