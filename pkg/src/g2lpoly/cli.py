"""Batch front end: read curve/prime jobs from stdin, write L-polynomial
coefficients to stdout, or run the timing benchmark.

Line grammar (ASCII decimal, whitespace-insensitive):

    p:[f0,...,f6]
    p:[f0,...,f6]:[h0,...,h3]

Trailing zero coefficients may be omitted.  Each successful line prints

    p:[1,a1,a2,p*a1,p^2]

which are the coefficients of 1 + a1*T + a2*T^2 + p*a1*T^3 + p^2*T^4 in that
exact sign convention (systems differ; this one expands the polynomial as
written).  Failed lines print ERR:<token> and processing continues.
"""

import argparse
import random
import statistics
import sys
import time
from concurrent.futures import ProcessPoolExecutor, as_completed

from . import kernels
from .clusterclassify import ClusterType
from .errors import (
    BadWitness,
    DegreeError,
    G2Error,
    GoodReduction,
    NotAlmostGood,
    NotOddPrime,
    NotSquarefree,
)
from .eulercore import EulerInput, euler_factor
from .oracle import MAX_ORACLE_PRIME, random_instance

_ERROR_TOKENS = (
    (GoodReduction, "good-reduction"),
    (NotAlmostGood, "not-almost-good"),
    (NotSquarefree, "not-squarefree"),
    (NotOddPrime, "not-odd-prime"),
    (BadWitness, "bad-witness"),
    (DegreeError, "degree"),
)


class ParseError(G2Error):
    pass


def _parse_bracket_list(text):
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ParseError(f"expected [..] list, got {text!r}")
    body = text[1:-1].strip()
    if not body:
        raise ParseError("empty coefficient list")
    try:
        return tuple(int(tok.strip()) for tok in body.split(","))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def parse_job_line(line):
    """-> (p, f_coeffs, h_coeffs or None)."""
    parts = line.strip().split(":")
    if len(parts) not in (2, 3):
        raise ParseError("expected p:[f0,...] or p:[f0,...]:[h0,...]")
    try:
        p = int(parts[0].strip())
    except ValueError as exc:
        raise ParseError(f"bad prime field {parts[0]!r}") from exc
    f = _parse_bracket_list(parts[1])
    if len(f) > 7:
        raise ParseError("more than 7 curve coefficients")
    h = None
    if len(parts) == 3:
        h = _parse_bracket_list(parts[2])
        if len(h) > 4:
            raise ParseError("more than 4 twisting coefficients")
    return p, f, h


def _is_probable_prime(n):
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    for sp in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % sp == 0:
            return n == sp
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def process_line(line, nonsquare=None, check_prime=False, seed=None):
    """One job line -> one output line; never raises."""
    if not line.strip():
        return None
    try:
        p, f, h = parse_job_line(line)
    except ParseError:
        return "ERR:parse"
    if check_prime and not _is_probable_prime(p):
        return "ERR:not-prime"
    rng = random.Random(f"{seed}|{line.strip()}")
    try:
        lp = euler_factor(EulerInput(f, p, h, nonsquare), rng)
    except G2Error as exc:
        for cls, token in _ERROR_TOKENS:
            if isinstance(exc, cls):
                return f"ERR:{token}"
        return "ERR:error"
    c = lp.coefficients()
    return f"{p}:[{c[0]},{c[1]},{c[2]},{c[3]},{c[4]}]"


def _worker(args):
    return process_line(*args)


def run_batch(lines, out, nonsquare=None, check_prime=False, jobs=1, stable=True, seed=None):
    """Process a job stream; returns the exit code (0 unless nothing parsed)."""
    lines = [ln for ln in lines if ln.strip()]
    if not lines:
        return 0
    tasks = [(ln, nonsquare, check_prime, seed) for ln in lines]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            if stable:
                results = list(pool.map(_worker, tasks, chunksize=16))
            else:
                futures = [pool.submit(_worker, t) for t in tasks]
                results = [fut.result() for fut in as_completed(futures)]
    else:
        results = [_worker(t) for t in tasks]
    for res in results:
        if res is not None:
            print(res, file=out)
    parsed = sum(1 for r in results if r != "ERR:parse")
    return 0 if parsed else 1


_BENCH_PRIMES = (3, 5, 7, 13, 31, 61, 127, 251, 509, 1021, 2039, 4093, 8191)


def _bench_type(typ, count, iters, rng, out):
    instances = []
    for _ in range(count):
        p = rng.choice(_BENCH_PRIMES)
        instances.append(random_instance(p, typ, rng, compute_expected=False))
    # warm-up pass compiles the kernels and primes caches
    euler_factor(EulerInput(instances[0].f, instances[0].p), rng)
    times = []
    for inst in instances:
        inp = EulerInput(inst.f, inst.p)
        t0 = time.perf_counter()
        for _ in range(iters):
            euler_factor(inp, rng)
        times.append((time.perf_counter() - t0) / iters * 1e3)
    print(
        f"  {typ.value:>3}  {len(times):>6}  "
        f"{statistics.fmean(times):9.3f}  {statistics.median(times):9.3f}  "
        f"{max(times):9.3f}",
        file=out,
    )
    return times


def _bench_kernels(out, rng):
    """Same counting workload through the jitted and numpy paths."""
    import numpy as np

    p = 8191
    coeffs = np.asarray([rng.randrange(p) for _ in range(4)], dtype=np.int64)
    reps = 50
    rows = []
    if kernels.HAVE_NUMBA:
        kernels._count_affine_fp_njit(coeffs, p)  # compile outside the timer
        t0 = time.perf_counter()
        for _ in range(reps):
            kernels._count_affine_fp_njit(coeffs, p)
        rows.append(("njit", (time.perf_counter() - t0) / reps * 1e6))
    t0 = time.perf_counter()
    for _ in range(reps):
        kernels.count_affine_fp_numpy(coeffs, p)
    rows.append(("numpy", (time.perf_counter() - t0) / reps * 1e6))
    print(f"\ncubic point count over F_{p} (microseconds per call):", file=out)
    for name, us in rows:
        print(f"  {name:>5}  {us:9.1f}", file=out)


def bench(count=200, iters=1, seed=1, out=None):
    """Per-type timing table for euler_factor over oracle instances."""
    out = out or sys.stdout
    rng = random.Random(seed)
    print(f"kernel mode: {kernels.kernel_mode()}", file=out)
    print(
        f"euler_factor over {count} oracle instances per type, "
        f"p <= {min(max(_BENCH_PRIMES), MAX_ORACLE_PRIME)}, {iters} iteration(s) each "
        f"(milliseconds):",
        file=out,
    )
    print(f"  {'type':>4}  {'count':>6}  {'mean':>9}  {'median':>9}  {'max':>9}", file=out)
    for typ in (ClusterType.T1, ClusterType.T2A, ClusterType.T2B, ClusterType.T4):
        _bench_type(typ, count, iters, rng, out)
    _bench_kernels(out, rng)
    return 0


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="g2lpoly",
        description="Euler factors of genus 2 curves at odd primes of almost "
        "good reduction; reads p:[f0,...,f6](:[h0,...,h3]) lines from stdin.",
    )
    parser.add_argument("--nonsquare", type=int, default=None,
                        help="quadratic nonresidue witness passed to every line")
    parser.add_argument("--check-prime", action="store_true",
                        help="Miller-Rabin check each p before computing")
    parser.add_argument("--stable", action="store_true",
                        help="preserve input order under --jobs")
    parser.add_argument("--jobs", type=int, default=1, metavar="N",
                        help="worker processes for line-level parallelism")
    parser.add_argument("--bench", action="store_true",
                        help="run the per-type timing benchmark and exit")
    parser.add_argument("--iters", type=int, default=1, metavar="N",
                        help="benchmark: repeat each computation N times")
    parser.add_argument("--count", type=int, default=200, metavar="N",
                        help="benchmark: instances per type")
    parser.add_argument("--seed", type=int, default=None,
                        help="seed for benchmark generation / Las Vegas draws")
    args = parser.parse_args(argv)
    if args.bench:
        return bench(args.count, args.iters, args.seed if args.seed is not None else 1)
    try:
        lines = sys.stdin.read().splitlines()
    except OSError:
        return 2
    return run_batch(
        lines,
        sys.stdout,
        nonsquare=args.nonsquare,
        check_prime=args.check_prime,
        jobs=max(args.jobs, 1),
        stable=args.stable or args.jobs <= 1,
        seed=args.seed,
    )


if __name__ == "__main__":
    sys.exit(main())
