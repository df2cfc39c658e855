"""File-backed energy/Hamiltonian database.

Layout: one JSON file per record version under records/, a single
index.json mapping record_id -> version entries, and hamiltonians/ for
serialized operator files. Every index update happens under an exclusive
flock on .lock and lands via write-new-then-rename, so a crash can orphan
a record file but never corrupt the index. Readers never take the lock.
"""

from __future__ import annotations

import fcntl
import hashlib
import json
import os
from contextlib import contextmanager
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from pathlib import Path

from .errors import UsageError

VARIATIONAL_SLACK = 1e-9


@dataclass
class EnergyRecord:
    """One scan point: identity, energies, and method provenance.

    record_id hashes only (molecule, geometry, basis, ansatz, optimizer,
    seed), so re-running the same configuration yields the same id and
    differing results stack up as versions under it.
    """

    molecule: str
    basis: str
    geometry: object = None        # [[symbol, x, y, z], ...] in Angstrom, or {"fcidump": path}
    bond_length: float | None = None
    n_qubits: int | None = None
    e_hf: float | None = None
    e_vqe: float | None = None
    e_exact: float | None = None
    hamiltonian_ref: dict | None = None   # {"fermion": path, "pauli": path}
    ansatz: str | None = None
    optimizer: str | None = None
    seed: int | None = None
    evaluations: int | None = None
    error: str | None = None
    record_id: str = ""
    created_at: str = ""

    def content_key(self) -> dict:
        return {
            "molecule": self.molecule,
            "geometry": self.geometry,
            "basis": self.basis,
            "ansatz": self.ansatz,
            "optimizer": self.optimizer,
            "seed": self.seed,
        }

    def compute_id(self) -> str:
        canonical = json.dumps(self.content_key(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode()).hexdigest()[:16]

    def validate(self):
        if not self.molecule:
            raise UsageError("record needs a molecule label")
        for lo, hi in (("e_exact", "e_hf"), ("e_exact", "e_vqe")):
            a, b = getattr(self, lo), getattr(self, hi)
            if a is not None and b is not None and b < a - VARIATIONAL_SLACK:
                raise UsageError(f"variational bound violated: {hi} < {lo}")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "EnergyRecord":
        return cls(**data)


class EnergyDB:
    def __init__(self, root):
        self.root = Path(root)
        self.records_dir = self.root / "records"
        self.hamiltonians_dir = self.root / "hamiltonians"
        self.index_path = self.root / "index.json"
        self.lock_path = self.root / ".lock"
        self.records_dir.mkdir(parents=True, exist_ok=True)
        self.hamiltonians_dir.mkdir(exist_ok=True)

    @contextmanager
    def _locked(self):
        # A fresh fd per acquisition: flock then serializes across both
        # threads and processes.
        fd = os.open(self.lock_path, os.O_CREAT | os.O_RDWR)
        try:
            fcntl.flock(fd, fcntl.LOCK_EX)
            yield
        finally:
            fcntl.flock(fd, fcntl.LOCK_UN)
            os.close(fd)

    def _read_index(self) -> dict:
        try:
            with open(self.index_path) as fh:
                return json.load(fh)
        except FileNotFoundError:
            return {"records": {}}

    def _write_index(self, index: dict):
        tmp = self.index_path.with_suffix(".json.tmp")
        with open(tmp, "w") as fh:
            json.dump(index, fh, indent=1, sort_keys=True)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, self.index_path)

    def put(self, record: EnergyRecord) -> str:
        """Append the record as a new version under its content id."""
        record.validate()
        if not record.record_id:
            record.record_id = record.compute_id()
        if not record.created_at:
            record.created_at = datetime.now(timezone.utc).isoformat()
        with self._locked():
            index = self._read_index()
            entries = index["records"].setdefault(record.record_id, [])
            version = len(entries) + 1
            filename = f"{record.record_id}.v{version}.json"
            with open(self.records_dir / filename, "w") as fh:
                json.dump(record.to_dict(), fh, indent=1, sort_keys=True)
                fh.flush()
                os.fsync(fh.fileno())
            entries.append(
                {
                    "version": version,
                    "file": f"records/{filename}",
                    "created_at": record.created_at,
                }
            )
            self._write_index(index)
        return record.record_id

    def versions(self, record_id: str) -> list:
        return list(self._read_index()["records"].get(record_id, []))

    def _load(self, entry: dict) -> EnergyRecord:
        with open(self.root / entry["file"]) as fh:
            return EnergyRecord.from_dict(json.load(fh))

    def get(self, record_id: str, version: int | None = None) -> EnergyRecord:
        entries = self.versions(record_id)
        if not entries:
            raise KeyError(record_id)
        if version is None:
            return self._load(entries[-1])
        for entry in entries:
            if entry["version"] == version:
                return self._load(entry)
        raise KeyError(f"{record_id} version {version}")

    def list_ids(self) -> list:
        return sorted(self._read_index()["records"])

    def all_records(self) -> list:
        return [self.get(record_id) for record_id in self.list_ids()]

    def query(self, molecule=None, basis=None, method=None) -> list:
        """Latest-version records matching the filters, sorted by
        (molecule, bond length, created_at). method requires e_<method>."""
        if method is not None and method not in ("hf", "vqe", "exact"):
            raise UsageError(f"unknown method filter {method!r}")
        matches = []
        for record in self.all_records():
            if molecule is not None and record.molecule != molecule:
                continue
            if basis is not None and record.basis != basis:
                continue
            if method is not None and getattr(record, f"e_{method}") is None:
                continue
            matches.append(record)
        matches.sort(
            key=lambda r: (
                r.molecule,
                r.bond_length if r.bond_length is not None else float("inf"),
                r.created_at,
            )
        )
        return matches

    def audit(self) -> list:
        """Integrity problems found in the index; empty means healthy."""
        problems = []
        index = self._read_index()
        for record_id, entries in index["records"].items():
            seen_versions = [entry["version"] for entry in entries]
            if seen_versions != list(range(1, len(entries) + 1)):
                problems.append(f"{record_id}: versions not contiguous: {seen_versions}")
            for entry in entries:
                path = self.root / entry["file"]
                if not path.exists():
                    problems.append(f"{record_id}: missing file {entry['file']}")
                    continue
                try:
                    record = self._load(entry)
                except (OSError, ValueError, TypeError) as exc:
                    problems.append(f"{record_id}: unreadable {entry['file']}: {exc}")
                    continue
                if record.record_id != record_id:
                    problems.append(
                        f"{record_id}: file {entry['file']} claims id {record.record_id}"
                    )
        return problems
