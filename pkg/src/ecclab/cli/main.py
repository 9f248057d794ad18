"""``ecclab`` command-line driver.

Exit codes: 0 success, 2 configuration error, 3 input error, 4 contract
violation.  Trial i of a command draws from ``child_rng(seed, i)``, so output
bytes depend only on the config and the seed.
"""
from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from ..bits import int_to_bits
from ..codes import BSC, Adversarial, DecodingError, child_rng, transmit
from ..concat_gv import (
    ConcatCode,
    brute_force_decode,
    concat_decode_naive,
    concat_list_decode,
    hadamard_list_decoder,
    rs_list_decoder,
)
from ..fourier import BooleanFunction, fourier_transform, km_learn_heavy, random_rounding
from ..galois import GF
from ..hadamard import BitOracle, HadamardCode, blr_local_decode, gl_list_decode, linear_agreements, planted_oracle
from ..pir import (
    DirectReadDecoder,
    HadamardSmoothDecoder,
    MultilinearSmoothDecoder,
    TrivialScheme,
    communication_cost,
    pir_from_smooth_decoder,
    privacy_statistical_distance,
)
from ..polycode import MultilinearCode
from ..reed_solomon import RSCode, sudan_list_decode_weighted
from .config import ConfigError, ExperimentConfig, load_config
from .output import render, render_document
from .wordio import InputError, read_words, write_words

EXIT_OK, EXIT_CONFIG, EXIT_INPUT, EXIT_CONTRACT = 0, 2, 3, 4
WILSON_Z = 1.959963984540054  # two-sided 95%


class ContractViolation(RuntimeError):
    """A decoder returned something its guarantee rules out (exit code 4)."""


def wilson_interval(successes: int, trials: int, z: float = WILSON_Z) -> tuple[float, float]:
    if trials == 0:
        return (0.0, 1.0)
    p = successes / trials
    denom = 1 + z * z / trials
    centre = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    return (max(0.0, centre - half), min(1.0, centre + half))


def _msg(symbols: Sequence[int]) -> str:
    return " ".join(str(int(s)) for s in symbols)


@dataclass
class Family:
    """Uniform view of a code family for the word-level commands."""

    name: str
    code: object
    message_q: int
    decode: Callable[[tuple[int, ...]], tuple[int, ...]]
    list_decode: Callable[[tuple[int, ...]], list[tuple[int, ...]]] | None
    radius: int | None = None

    @property
    def n(self) -> int:
        return self.code.n

    def encode(self, msg):
        return tuple(int(v) for v in self.code.encode(tuple(msg)))


def build_family(cfg: ExperimentConfig) -> Family:
    try:
        if cfg.family == "rs":
            code = RSCode.standard(cfg.q, cfg.n, cfg.k)
            t = cfg.t or math.isqrt(2 * cfg.n * cfg.k) + 1

            def rs_list(y):
                res = sudan_list_decode_weighted(list(zip(code.points, y)), code.k, t, code.field)
                return [tuple(m) for m in res.messages]
            return Family("rs", code, cfg.q, code.decode, rs_list, code.max_errors)
        if cfg.family == "hadamard":
            code = HadamardCode(cfg.k)

            def had_decode(y):
                a = int(np.argmax(linear_agreements(np.asarray(y, dtype=np.uint8))))
                return int_to_bits(a, cfg.k)
            return Family("hadamard", code, 2, had_decode, hadamard_list_decoder(cfg.k, cfg.eps))
        if cfg.family == "concat":
            outer = RSCode.standard(2 ** cfg.inner_k, cfg.n, cfg.k)
            cc = ConcatCode(outer, HadamardCode(cfg.inner_k))
            t = cfg.t or (cfg.n + cfg.k + 1) // 2
            inner_ld, outer_ld = hadamard_list_decoder(cfg.inner_k, cfg.eps), rs_list_decoder(outer, t)
            return Family(
                "concat", cc, 2, lambda y: concat_decode_naive(cc, y),
                lambda y: concat_list_decode(cc, y, inner_ld, outer_ld, exhaustive=True))
        code = MultilinearCode(GF(cfg.q), cfg.m, cfg.d)
        return Family("multilinear", code, cfg.q, lambda y: brute_force_decode(code, y), None)
    except ValueError as exc:
        raise ConfigError(f"cannot build {cfg.family} code: {exc}") from exc


def _check_message(fam: Family, msg, idx: int) -> None:
    if len(msg) != fam.code.k:
        raise InputError(f"message {idx}: length {len(msg)} != k = {fam.code.k}")
    if any(s >= fam.message_q for s in msg):
        raise InputError(f"message {idx}: symbol outside alphabet of size {fam.message_q}")


def _check_word(fam: Family, word, idx: int) -> None:
    if len(word) != fam.n:
        raise InputError(f"word {idx}: length {len(word)} != n = {fam.n}")
    if any(s >= fam.code.q for s in word):
        raise InputError(f"word {idx}: symbol outside alphabet of size {fam.code.q}")


def _channel(cfg: ExperimentConfig, param: float | None = None):
    if cfg.channel == "bsc":
        return BSC(cfg.p if param is None else float(param))
    if cfg.channel == "adversarial":
        return Adversarial(cfg.errors if param is None else int(param))
    return None


def _agreement(a, b) -> int:
    return sum(int(x == y) for x, y in zip(a, b))


def cmd_encode(cfg: ExperimentConfig, args) -> str:
    fam = build_family(cfg)
    msgs = read_words(args.input)
    records, received = [], []
    for i, msg in enumerate(msgs):
        _check_message(fam, msg, i)
        cw = fam.encode(msg)
        ch = _channel(cfg)
        rw = cw if ch is None else transmit(ch, cw, fam.code.q, child_rng(cfg.seed, i)).symbols
        received.append(rw)
        records.append({"index": i, "message": _msg(msg), "codeword": _msg(cw),
                        "received": _msg(rw), "errors": fam.n - _agreement(cw, rw)})
    if args.words:
        write_words(args.words, received, packed=fam.code.q == 2)
    return render(records, ["index", "message", "codeword", "received", "errors"], cfg.format)


def cmd_decode(cfg: ExperimentConfig, args) -> str:
    fam = build_family(cfg)
    records = []
    for i, word in enumerate(read_words(args.input)):
        _check_word(fam, word, i)
        try:
            msg = fam.decode(word)
        except DecodingError:
            records.append({"index": i, "status": "failed", "message": "", "agreement": None})
            continue
        agree = _agreement(fam.encode(msg), word)
        if fam.radius is not None and fam.n - agree > fam.radius:
            raise ContractViolation(f"word {i}: decoder returned a message at distance {fam.n - agree}")
        records.append({"index": i, "status": "ok", "message": _msg(msg), "agreement": agree})
    return render(records, ["index", "status", "message", "agreement"], cfg.format)


def cmd_list_decode(cfg: ExperimentConfig, args) -> str:
    fam = build_family(cfg)
    if fam.list_decode is None:
        raise ConfigError(f"family {fam.name!r} has no list decoder")
    records = []
    for i, word in enumerate(read_words(args.input)):
        _check_word(fam, word, i)
        try:
            cands = sorted(fam.list_decode(word))
        except ValueError as exc:
            raise ConfigError(f"list decoder precondition: {exc}") from exc
        records.append({"index": i, "count": len(cands),
                        "candidates": [_msg(c) for c in cands],
                        "agreements": [_agreement(fam.encode(c), word) for c in cands]})
    return render(records, ["index", "count", "candidates", "agreements"], cfg.format)


def _simulate_cell(cfg: ExperimentConfig, fam: Family, cell: int, param: float) -> tuple[int, int, float]:
    successes = queries = 0
    for t in range(cfg.trials):
        rng = child_rng(cfg.seed, cell * cfg.trials + t)
        if fam.name == "hadamard":
            k = cfg.k
            x = int(rng.integers(0, 1 << k))
            table = np.array(fam.encode(int_to_bits(x, k)), dtype=np.uint8)
            table[rng.choice(1 << k, size=int(math.floor(param * (1 << k))), replace=False)] ^= 1
            oracle = BitOracle(table)
            i = int(rng.integers(0, k))
            successes += blr_local_decode(oracle, i, rng) == int_to_bits(x, k)[i]
            queries += oracle.queries
        else:
            msg = tuple(int(v) for v in rng.integers(0, fam.message_q, size=fam.code.k))
            rw = transmit(_channel(cfg, param), fam.encode(msg), fam.code.q, rng)
            try:
                successes += fam.decode(rw.symbols) == msg
            except DecodingError:
                pass
            queries += fam.n
    return successes, cfg.trials, queries / cfg.trials if cfg.trials else 0.0


def cmd_simulate(cfg: ExperimentConfig, args) -> str:
    fam = build_family(cfg)
    if fam.name not in ("rs", "hadamard"):
        raise ConfigError("simulate supports family rs or hadamard")
    if fam.name == "rs" and cfg.channel == "none":
        raise ConfigError("simulate with family rs needs channel bsc or adversarial")
    if fam.name == "hadamard" and any(not 0 <= g <= 1 for g in cfg.grid):
        raise ConfigError("hadamard grid values are corruption fractions in [0, 1]")
    records = []
    for cell, param in enumerate(cfg.grid):
        try:
            succ, trials, mean_q = _simulate_cell(cfg, fam, cell, param)
        except ValueError as exc:
            raise ConfigError(f"grid value {param}: {exc}") from exc
        lo, hi = wilson_interval(succ, trials)
        records.append({"param": float(param), "trials": trials, "successes": int(succ),
                        "rate": succ / trials if trials else 0.0,
                        "ci_low": lo, "ci_high": hi, "mean_queries": float(mean_q)})
    cols = ["param", "trials", "successes", "rate", "ci_low", "ci_high", "mean_queries"]
    return render(records, cols, cfg.format)


def _pir_decoder(cfg: ExperimentConfig):
    try:
        if cfg.scheme == "hadamard":
            return HadamardSmoothDecoder(cfg.k)
        if cfg.scheme == "hadamard-direct":
            return DirectReadDecoder(cfg.k)
        return MultilinearSmoothDecoder(GF(cfg.q), cfg.m, cfg.d)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def cmd_pir_demo(cfg: ExperimentConfig, args) -> str:
    dec = _pir_decoder(cfg)
    try:
        scheme = pir_from_smooth_decoder(dec, unsafe=cfg.unsafe)
    except ValueError as exc:
        raise ConfigError(f"{exc}; set unsafe = true to audit it anyway") from exc
    k, alphabet = dec.message_length, dec.code.q
    x = [int(v) for v in child_rng(cfg.seed, 0).integers(0, alphabet, size=k)]
    servers = scheme.setup(x)
    transcripts = []
    for r in range(cfg.retrievals):
        i = r % k
        tr = scheme.retrieve(servers, i, child_rng(cfg.seed, 1 + r))
        if tr.output != x[i]:
            raise ContractViolation(f"retrieval {r} returned {tr.output}, expected {x[i]}")
        tr.expected = x[i]
        transcripts.append(tr)
    worst = 0.0
    for t in range(scheme.servers_count):
        for i in range(k):
            for j in range(i + 1, k):
                worst = max(worst, privacy_statistical_distance(scheme, i, j, t).distance)
    cost, baseline = communication_cost(scheme), communication_cost(TrivialScheme(k))
    if cfg.format == "json":
        return render_document({
            "command": "pir-demo", "scheme": scheme.name, "servers": scheme.servers_count,
            "database": x,
            "transcripts": [{"index": tr.index, "output": tr.output, "expected": tr.expected,
                             "servers": [{"server": s.server, "query": s.query, "answer": s.answer}
                                         for s in tr.servers]} for tr in transcripts],
            "audit": {"max_distance": worst, "exact": True, "perfectly_smooth": dec.perfectly_smooth},
            "communication_bits": cost, "baseline_bits": baseline,
        })
    records = [{"retrieval": r, "index": tr.index, "output": tr.output, "expected": tr.expected,
                "queries": [s.query for s in tr.servers], "answers": [s.answer for s in tr.servers],
                "max_distance": worst, "communication_bits": cost, "baseline_bits": baseline}
               for r, tr in enumerate(transcripts)]
    cols = ["retrieval", "index", "output", "expected", "queries", "answers",
            "max_distance", "communication_bits", "baseline_bits"]
    return render(records, cols, cfg.format)


def cmd_gl_demo(cfg: ExperimentConfig, args) -> str:
    if not 0 < cfg.eps < 0.5:
        raise ConfigError("eps must be in (0, 1/2)")
    if not 0 <= cfg.agreement <= 1:
        raise ConfigError("agreement must be in [0, 1]")
    k = cfg.k
    records, hits = [], 0
    for r in range(cfg.runs):
        rng = child_rng(cfg.seed, r)
        a = int(rng.integers(0, 1 << k))
        oracle = planted_oracle(a, k, cfg.agreement, rng)
        found = gl_list_decode(oracle, cfg.eps, rng=rng)
        hits += a in found
        records.append({"run": r, "planted": "".join(map(str, int_to_bits(a, k))),
                        "recovered": a in found, "list_size": len(found), "queries": oracle.queries})
    print(f"recovered {hits}/{cfg.runs}", file=sys.stderr)
    return render(records, ["run", "planted", "recovered", "list_size", "queries"], cfg.format)


def _parse_int_list(raw: str, key: str) -> list[int]:
    try:
        return [int(v, 0) for v in raw.split(",") if v.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad {key}: {raw!r}") from exc


def _target_function(cfg: ExperimentConfig) -> BooleanFunction:
    k, rng = cfg.k, child_rng(cfg.seed, 0)
    if cfg.function == "random":
        return BooleanFunction(rng.integers(0, 2, 1 << k))
    if cfg.function == "majority":
        pos = _parse_int_list(cfg.inputs, "inputs")
        if len(pos) % 2 == 0 or any(not 0 <= p < k for p in pos):
            raise ConfigError("majority needs an odd number of input positions in [0, k)")
        x = np.arange(1 << k, dtype=np.int64)
        votes = sum((x >> (k - 1 - p)) & 1 for p in pos)
        return BooleanFunction((2 * votes > len(pos)).astype(np.uint8))
    coeffs = {}
    for item in (s for s in cfg.coefficients.split(",") if s.strip()):
        try:
            a, c = item.split(":")
            coeffs[int(a, 0)] = float(c)
        except ValueError as exc:
            raise ConfigError(f"bad coefficient entry {item!r}; expected a:c") from exc
    if any(not 0 <= a < 1 << k for a in coeffs):
        raise ConfigError("coefficient index outside {0,1}^k")
    try:
        return random_rounding(k, coeffs, rng)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def cmd_learn_fourier(cfg: ExperimentConfig, args) -> str:
    if not 0 < cfg.theta < 1:
        raise ConfigError("theta must be in (0, 1)")
    if cfg.k > 20:
        raise ConfigError("k must be at most 20")
    f = _target_function(cfg)
    learned = dict(km_learn_heavy(f, cfg.theta, child_rng(cfg.seed, 1), cfg.tolerance or None))
    spec = fourier_transform(f)
    heavy = spec.heavy(cfg.theta)
    records = [{"a": "".join(map(str, int_to_bits(a, cfg.k))), "learned": a in learned,
                "estimate": learned.get(a), "exact": spec[a], "exact_heavy": a in heavy}
               for a in sorted(set(learned) | set(heavy))]
    print(f"learned set {'matches' if set(learned) == set(heavy) else 'differs from'} exact heavy set",
          file=sys.stderr)
    return render(records, ["a", "learned", "estimate", "exact", "exact_heavy"], cfg.format)


COMMANDS = {
    "encode": (cmd_encode, "encode messages from a word file", True),
    "decode": (cmd_decode, "unique-decode received words", True),
    "list-decode": (cmd_list_decode, "list-decode received words", True),
    "simulate": (cmd_simulate, "sweep a channel parameter grid", False),
    "pir-demo": (cmd_pir_demo, "run PIR retrievals and a privacy audit", False),
    "gl-demo": (cmd_gl_demo, "Goldreich-Levin recovery on planted functions", False),
    "learn-fourier": (cmd_learn_fourier, "learn heavy Fourier coefficients", False),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ecclab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text, takes_input) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="key = value config file")
        p.add_argument("--seed", type=int, help="master seed (u64), overrides the config")
        p.add_argument("--out", help="output path, '-' for stdout; overrides the config")
        p.add_argument("--format", choices=("csv", "json"), help="overrides the config")
        if takes_input:
            p.add_argument("input", help="word file")
        if name == "encode":
            p.add_argument("--words", help="also write the received words to this word file")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    fn = COMMANDS[args.command][0]
    try:
        cfg = load_config(args.config)
        overrides = {k: v for k, v in (("seed", args.seed), ("out", args.out), ("format", args.format))
                     if v is not None}
        cfg = cfg.replace(**overrides)
        text = fn(cfg, args)
        if cfg.out == "-":
            sys.stdout.write(text)
        else:
            Path(cfg.out).write_text(text)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ContractViolation as exc:
        print(f"contract violation: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
