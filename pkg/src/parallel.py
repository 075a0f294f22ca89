"""Chunked process-pool map with a deterministic result order."""

import itertools
import logging
from multiprocessing import Pool
from typing import Callable, Iterable, TypeVar

from src.config import get_settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def chunkify(iterable: Iterable[T], chunk_size: int) -> Iterable[list[T]]:
    """Break an iterable into lists of at most chunk_size items."""
    it = iter(iterable)
    while True:
        chunk = list(itertools.islice(it, chunk_size))
        if not chunk:
            break
        yield chunk


def parallel_map(func: Callable[[list[T]], R], items: Iterable[T], chunk_size: int = 256,
                 threads: int | None = None) -> list[R]:
    """Apply func to consecutive chunks of items, one result per chunk, in order.

    With threads == 1 everything runs in-process; func must be a module-level
    function when a pool is used.
    """
    threads = get_settings().threads if threads is None else threads
    chunks = list(chunkify(items, chunk_size))
    if threads <= 1 or len(chunks) <= 1:
        return [func(chunk) for chunk in chunks]
    logger.debug("Dispatching %d chunks to %d worker processes", len(chunks), threads)
    with Pool(processes=threads) as pool:
        return pool.map(func, chunks)
