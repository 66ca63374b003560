"""Readers and writers for the flat CSV artifacts.

All files are UTF-8 with LF line endings. Motif result files carry the header
``rank,a,w_a,b,w_b,d`` with 1-based indices and dissimilarities at 12
significant digits; that serialized precision is the canonical one, so a
parse/rewrite round trip is byte-stable. Trace files hold one row per
snapshot: ``iteration, elapsed_ms, evals`` followed by k groups of
``a, w_a, b, w_b, d`` (empty cells while fewer than k motifs exist).
"""

import csv
import json

from .errors import IngestError
from .store import Motif, MotifSet

__all__ = [
    "format_d",
    "write_motifs_csv",
    "read_motifs_csv",
    "write_sample_csv",
    "write_landscape_csv",
    "write_oracle_sidecar",
    "TraceWriter",
]


def format_d(d):
    """Canonical 12-significant-digit rendering of a dissimilarity."""
    return "%.12g" % d


def write_motifs_csv(path, motifs):
    """Write a :class:`MotifSet` (or iterable of motifs) as a result file."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("rank,a,w_a,b,w_b,d\n")
        for rank, m in enumerate(motifs, start=1):
            fh.write("%d,%d,%d,%d,%d,%s\n" % (rank, m.a, m.w_a, m.b, m.w_b, format_d(m.d)))


def read_motifs_csv(path, requested_k=None):
    """Parse a motif result file back into a :class:`MotifSet`."""
    try:
        fh = open(path, "r", encoding="utf-8", newline="")
    except OSError as exc:
        raise IngestError("cannot read %s: %s" % (path, exc)) from exc
    with fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [c.strip() for c in header] != ["rank", "a", "w_a", "b", "w_b", "d"]:
            raise IngestError("%s: not a motif result file" % path)
        motifs = []
        for row in reader:
            if not row:
                continue
            try:
                motifs.append(Motif(int(row[1]), int(row[2]), int(row[3]), int(row[4]), float(row[5])))
            except (IndexError, ValueError) as exc:
                raise IngestError("%s: bad motif row %r (%s)" % (path, row, exc)) from exc
    k = requested_k if requested_k is not None else len(motifs)
    return MotifSet(tuple(motifs), requested_k=k)


def write_sample_csv(path, ref):
    """Write a :class:`SampleReference` as a one-row percentile report."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("count,min,p5,p50,p95,max\n")
        count, *qs = ref.as_row
        fh.write("%d,%s\n" % (count, ",".join(format_d(v) for v in qs)))


def write_landscape_csv(path, matrix, row_labels, col_labels):
    """Write a landscape slice as a matrix with row/column index headers."""
    rows, cols = matrix.shape
    if rows != len(row_labels) or cols != len(col_labels):
        raise ValueError("label lengths do not match the matrix shape")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("," + ",".join(str(c) for c in col_labels) + "\n")
        for label, row in zip(row_labels, matrix):
            fh.write(str(label) + "," + ",".join(format_d(v) for v in row) + "\n")


def write_oracle_sidecar(path, result):
    """Write the evaluations/elapsed sidecar next to an exact result file."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(
            {"evaluations": result.evaluations, "elapsed_seconds": result.elapsed_seconds},
            fh,
        )
        fh.write("\n")


class TraceWriter:
    """Streams trace snapshots to a flat CSV file."""

    def __init__(self, path, k):
        self.k = int(k)
        self._fh = open(path, "w", encoding="utf-8", newline="\n")
        groups = ",".join(
            "a_%d,w_a_%d,b_%d,w_b_%d,d_%d" % (i, i, i, i, i) for i in range(1, self.k + 1)
        )
        self._fh.write("iteration,elapsed_ms,evals,%s\n" % groups)

    def write(self, snap):
        cells = ["%d" % snap.iteration, "%.3f" % snap.elapsed_ms, "%d" % snap.evaluations]
        for i in range(self.k):
            if i < len(snap.motifs):
                m = snap.motifs[i]
                cells += ["%d" % m.a, "%d" % m.w_a, "%d" % m.b, "%d" % m.w_b, format_d(m.d)]
            else:
                cells += ["", "", "", "", ""]
        self._fh.write(",".join(cells) + "\n")

    def close(self):
        self._fh.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
