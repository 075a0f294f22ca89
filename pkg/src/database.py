import os
import sqlite3
from contextlib import contextmanager

from src.config import get_settings


def get_db_path():
    return get_settings().database_path


@contextmanager
def get_connection():
    conn = sqlite3.connect(get_db_path())
    conn.row_factory = sqlite3.Row
    conn.execute("PRAGMA journal_mode=WAL")
    conn.execute("PRAGMA foreign_keys=ON")
    try:
        yield conn
        conn.commit()
    except Exception:
        conn.rollback()
        raise
    finally:
        conn.close()


def init_db():
    os.makedirs(os.path.dirname(os.path.abspath(get_db_path())), exist_ok=True)
    with get_connection() as conn:
        conn.executescript("""
            CREATE TABLE IF NOT EXISTS enumeration_runs (
                id INTEGER PRIMARY KEY,
                class_key TEXT UNIQUE NOT NULL,
                n INTEGER NOT NULL,
                delta_max INTEGER NOT NULL,
                bipartite BOOLEAN DEFAULT 0,
                tree BOOLEAN DEFAULT 0,
                size INTEGER NOT NULL,
                runtime_seconds REAL,
                created_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP
            );

            CREATE TABLE IF NOT EXISTS catalog_graphs (
                id INTEGER PRIMARY KEY,
                run_id INTEGER NOT NULL REFERENCES enumeration_runs(id) ON DELETE CASCADE,
                graph6 TEXT NOT NULL,
                lambda1 REAL NOT NULL
            );

            CREATE INDEX IF NOT EXISTS idx_catalog_run
                ON catalog_graphs(run_id);
        """)


# --- Enumeration runs ---

def save_run(class_key, n, delta_max, bipartite, tree, catalog: list[tuple[str, float]],
             runtime_seconds=None):
    """Store a catalog as (graph6, lambda1) rows, replacing any earlier run of the class."""
    with get_connection() as conn:
        conn.execute("DELETE FROM enumeration_runs WHERE class_key=?", (class_key,))
        cur = conn.execute(
            """INSERT INTO enumeration_runs
               (class_key, n, delta_max, bipartite, tree, size, runtime_seconds)
               VALUES (?, ?, ?, ?, ?, ?, ?)""",
            (class_key, n, delta_max, int(bipartite), int(tree), len(catalog), runtime_seconds),
        )
        run_id = cur.lastrowid
        conn.executemany(
            "INSERT INTO catalog_graphs (run_id, graph6, lambda1) VALUES (?, ?, ?)",
            [(run_id, g6, lam) for g6, lam in catalog],
        )
        return run_id


def get_catalog(class_key):
    """Cached (graph6, lambda1) rows in insertion order, or None if the class was never stored."""
    with get_connection() as conn:
        run = conn.execute(
            "SELECT id FROM enumeration_runs WHERE class_key=?", (class_key,)
        ).fetchone()
        if run is None:
            return None
        rows = conn.execute(
            "SELECT graph6, lambda1 FROM catalog_graphs WHERE run_id=? ORDER BY id",
            (run["id"],),
        ).fetchall()
        return [(r["graph6"], r["lambda1"]) for r in rows]


def list_runs():
    with get_connection() as conn:
        rows = conn.execute(
            "SELECT * FROM enumeration_runs ORDER BY n, delta_max, class_key"
        ).fetchall()
        return [dict(r) for r in rows]
