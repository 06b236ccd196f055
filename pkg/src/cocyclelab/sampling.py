"""Counter-based random streams and symbolic path sampling.

Every random draw comes from a Philox generator keyed by
``seed + (stream << 64)`` where ``stream = (crc32(purpose) << 32) | index``.
Work is split into fixed-size chunks, each with its own stream, so results do
not depend on how many threads process the chunks.
"""

from __future__ import annotations

import os
import zlib
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ._kernels import get_kernels
from .errors import BlockCapExceeded
from .model import CocycleSpec, Word, require_valid

MASK64 = (1 << 64) - 1
CHUNK = 256


def stream_id(purpose: str, index: int = 0) -> int:
    return (zlib.crc32(purpose.encode()) << 32) | (int(index) & 0xFFFFFFFF)


def make_rng(seed: int, purpose: str, index: int = 0) -> np.random.Generator:
    """Independent generator for ``(seed, purpose, index)``."""
    key = (int(seed) & MASK64) | (stream_id(purpose, index) << 64)
    return np.random.Generator(np.random.Philox(key=key))


def default_threads() -> int:
    return os.cpu_count() or 1


def run_chunks(fn, n_chunks: int, threads: int | None = None) -> list:
    """``[fn(0), ..., fn(n_chunks - 1)]``, evaluated on a thread pool.

    Results come back in chunk order, so reductions over them are identical
    for every thread count.
    """
    threads = threads or default_threads()
    if threads <= 1 or n_chunks <= 1:
        return [fn(c) for c in range(n_chunks)]
    with ThreadPoolExecutor(max_workers=min(threads, n_chunks)) as ex:
        return list(ex.map(fn, range(n_chunks)))


def chunk_sizes(total: int, chunk: int = CHUNK) -> list:
    full, rest = divmod(int(total), chunk)
    return [chunk] * full + ([rest] if rest else [])


def cumulative_tables(spec: CocycleSpec, init=None):
    """Cumulative initial law and per-column cumulative transition rows.

    ``cumT[j]`` is the cumulative law of the next symbol given current
    symbol ``j``.  Trailing entries are pinned to 1.0 so rounding can never
    push a uniform draw past the last symbol.
    """
    init = spec.stat if init is None else np.asarray(init, dtype=float)
    cum_init = np.cumsum(init / init.sum())
    cumT = np.cumsum(spec.trans.T, axis=1)
    cum_init[-1] = 1.0
    cumT[:, -1] = 1.0
    # zero-probability tail symbols must also be unreachable
    for row, law in zip(cumT, spec.trans.T):
        nz = np.flatnonzero(law > 0)
        row[nz[-1]:] = 1.0
    nz = np.flatnonzero(init > 0)
    cum_init[nz[-1]:] = 1.0
    return np.ascontiguousarray(cum_init), np.ascontiguousarray(cumT)


def symbols_from_uniforms(spec: CocycleSpec, u: np.ndarray, init=None) -> np.ndarray:
    """0-based symbol paths, one row per lane, from a uniform array."""
    cum_init, cumT = cumulative_tables(spec, init)
    out = np.empty(u.shape, dtype=np.int64)
    get_kernels().markov_symbols(cum_init, cumT, np.ascontiguousarray(u), out)
    return out


class PathSampler:
    """Stateful sampler of symbol paths and renewal blocks for one stream.

    Identical ``(seed, stream)`` and call sequence give identical output.
    """

    def __init__(self, spec: CocycleSpec, seed: int, stream: int = 0):
        self.spec = require_valid(spec)
        self.seed = int(seed)
        self.stream = int(stream)
        self.rng = make_rng(seed, "path", stream)
        self._cum_init, self._cumT = cumulative_tables(spec)
        self._state = None  # current 0-based symbol

    def _next(self, u):
        i = 0
        cum = self._cum_init if self._state is None else self._cumT[self._state]
        while i < len(cum) - 1 and u >= cum[i]:
            i += 1
        self._state = i
        return i

    def sample_path(self, n: int) -> np.ndarray:
        """Next ``n`` symbols (1-based) of the chain."""
        if n <= 0:
            return np.zeros(0, dtype=np.int64)
        u = self.rng.random(n)
        out = np.empty(n, dtype=np.int64)
        if self._state is None:
            out[0] = self._next(u[0])
            start = 1
        else:
            start = 0
        if start < n:
            row = np.empty((1, n - start + 1), dtype=np.int64)
            # continue the chain from the current state
            init = np.zeros(self.spec.k)
            init[self._state] = 1.0
            cum_init = np.cumsum(init)
            cum_init[self._state:] = 1.0
            uu = np.concatenate([[0.0], u[start:]])[None, :]
            get_kernels().markov_symbols(cum_init, self._cumT, uu, row)
            out[start:] = row[0, 1:]
            self._state = int(out[-1])
        return out + 1

    def sample_block(self, chunk: int = 4096) -> Word:
        """One renewal block: a singular symbol, invertible symbols, and the
        next singular symbol (inclusive).  The block starts at the current
        state when it is singular; otherwise the chain runs until it is."""
        sing = self.spec.sing_mask
        cap = self.spec.block_cap
        drawn = 0
        if self._state is None or not sing[self._state]:
            while True:
                self.sample_path(1)
                drawn += 1
                if sing[self._state]:
                    break
                if drawn >= cap:
                    raise BlockCapExceeded(f"no singular symbol within {cap} draws")
        syms = [self._state]
        while True:
            take = min(chunk, cap - drawn)
            if take <= 0:
                raise BlockCapExceeded(f"renewal block longer than {cap} draws")
            path = self.sample_path(take) - 1
            drawn += take
            hits = np.flatnonzero(sing[path])
            if hits.size:
                e = int(hits[0])
                syms.extend(int(x) for x in path[: e + 1])
                # rewind the chain state to the block end; unused draws are
                # discarded, which keeps the stream deterministic
                self._state = int(path[e])
                return Word(tuple(s + 1 for s in syms))
            syms.extend(int(x) for x in path)
