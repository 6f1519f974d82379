"""Cubic tight-binding benchmark: setup, extraction and lookup timings."""
from __future__ import annotations

import gc
import random
import statistics
import time
from contextlib import contextmanager
from dataclasses import astuple, dataclass, fields

import numpy as np

from .index import Index
from .model import HoppingAmplitude, Model
from .sparse import assemble_triplets, to_compressed_columns


def build_cubic_model(n: int, onsite: float = 0.0, hopping: float = -1.0) -> Model:
    """Constructed ``n x n x n`` cubic model with onsite and nearest-neighbour terms.

    Sites are indexed ``[x, y, z]``. Every bond is added together with its
    Hermitian conjugate, so the model holds ``n**3 + 6 * n**2 * (n - 1)``
    amplitudes.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    model = Model()
    add = model.add_amplitude
    for x in range(n):
        for y in range(n):
            for z in range(n):
                site = (x, y, z)
                add(HoppingAmplitude(onsite, site, site))
                if x + 1 < n:
                    add(HoppingAmplitude(hopping, (x + 1, y, z), site), True)
                if y + 1 < n:
                    add(HoppingAmplitude(hopping, (x, y + 1, z), site), True)
                if z + 1 < n:
                    add(HoppingAmplitude(hopping, (x, y, z + 1), site), True)
    model.construct()
    return model


@dataclass
class BenchmarkRecord:
    n: int
    basis_size: int
    setup_seconds: float
    extract_triplets_seconds: float
    extract_compressed_seconds: float
    lookup_ns_per_call: float


CSV_HEADER = [f.name for f in fields(BenchmarkRecord)]
TIMED = CSV_HEADER[2:]


@contextmanager
def _no_gc():
    # the cyclic collector rescans every live object, which makes
    # allocation-heavy phases look superlinear
    enabled = gc.isenabled()
    gc.collect()
    gc.disable()
    try:
        yield
    finally:
        if enabled:
            gc.enable()


def _timed(fn):
    with _no_gc():
        start = time.perf_counter()
        result = fn()
        elapsed = time.perf_counter() - start
    return elapsed, result


def _lookup_ns(model: Model, n_lookups: int, rng: random.Random) -> float:
    size = model.basis_size
    sample = [Index(model.physical_index_of(rng.randrange(size))) for _ in range(n_lookups)]
    lookup = model.basis_index_of
    with _no_gc():
        start = time.perf_counter_ns()
        for idx in sample:
            lookup(idx)
        elapsed = time.perf_counter_ns() - start
    return elapsed / n_lookups


def benchmark_size(n: int, repetitions: int = 3, n_lookups: int = 20_000, seed: int = 0) -> BenchmarkRecord:
    """Median timings over ``repetitions`` runs for one cube size."""
    rng = random.Random(seed)
    setup, triplets, compressed, lookups = [], [], [], []
    model = None
    for _ in range(repetitions):
        model = None
        dt, model = _timed(lambda: build_cubic_model(n))
        setup.append(dt)
        dt, _ = _timed(lambda: assemble_triplets(model))
        triplets.append(dt)
        dt, _ = _timed(lambda: to_compressed_columns(assemble_triplets(model)))
        compressed.append(dt)
        lookups.append(_lookup_ns(model, n_lookups, rng))
    return BenchmarkRecord(
        n=n,
        basis_size=model.basis_size,
        setup_seconds=statistics.median(setup),
        extract_triplets_seconds=statistics.median(triplets),
        extract_compressed_seconds=statistics.median(compressed),
        lookup_ns_per_call=statistics.median(lookups),
    )


def loglog_slope(x, y) -> float:
    """Least-squares slope of ``log y`` against ``log x``."""
    slope, _ = np.polyfit(np.log(np.asarray(x, float)), np.log(np.asarray(y, float)), 1)
    return float(slope)


def scaling_slopes(records) -> dict:
    sizes = [r.basis_size for r in records]
    return {name: loglog_slope(sizes, [getattr(r, name) for r in records]) for name in TIMED}


def run_benchmark(sizes, repetitions: int = 3, n_lookups: int = 20_000, seed: int = 0, log=None):
    """Benchmark every cube size; returns ``(records, slopes)``.

    Slopes need at least two distinct sizes and are empty otherwise.
    """
    sizes = list(sizes)
    if not sizes:
        raise ValueError("no sizes given")
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    records = []
    for n in sizes:
        record = benchmark_size(n, repetitions, n_lookups, seed)
        if log is not None:
            log(f"n={n} basis={record.basis_size} setup={record.setup_seconds:.4g}s "
                f"triplets={record.extract_triplets_seconds:.4g}s "
                f"lookup={record.lookup_ns_per_call:.1f}ns")
        records.append(record)
    slopes = scaling_slopes(records) if len({r.basis_size for r in records}) > 1 else {}
    return records, slopes


def write_records_csv(records, fh) -> None:
    fh.write(",".join(CSV_HEADER) + "\n")
    for r in records:
        fh.write(",".join(repr(v) for v in astuple(r)) + "\n")
