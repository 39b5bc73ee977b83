"""Core domain model: provenance records, rights vectors, verified licenses,
usage scenarios, and their canonical JSON documents.

All types are immutable values. Canonical serialization writes every field in
declared order, so equal values always produce byte-identical documents, and
``from_dict(to_dict(x)) == x`` holds for every type. Validation functions do
not raise on bad domain data; they return a list of violations so callers can
report all problems at once. Parsing, by contrast, raises :class:`ParseError`
because a document that cannot be decoded has no value to report on.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable, Mapping, Sequence

from .errors import ParseError, UnknownFieldWarning


class SubjectKind(str, Enum):
    DATASET = "dataset"
    WEBSITE = "website"
    SEARCH_ENGINE = "search_engine"


class TriState(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


class LicenseFoundVia(str, Enum):
    OFFICIAL_WEBSITE = "official_website"
    PACKAGED_FILE = "packaged_file"
    OWNER_CONTACT = "owner_contact"
    NONE_FOUND = "none_found"


class Grant(str, Enum):
    GRANTED = "granted"
    DENIED = "denied"
    UNSPECIFIED = "unspecified"


class ObligationKind(str, Enum):
    ATTRIBUTION = "attribution"
    CITE = "cite"
    LINK_LICENSE = "link_license"
    SHARE_ALIKE = "share_alike"
    INDICATE_CHANGES = "indicate_changes"
    TAKEDOWN = "takedown"
    INDEMNIFY = "indemnify"
    OTHER = "other"


class CaptureStatus(str, Enum):
    IN_RANGE = "in_range"
    OUT_OF_RANGE_FALLBACK = "out_of_range_fallback"
    UNAVAILABLE = "unavailable"


# Fixed right-name spaces. Custom rights may extend these but never shadow them.
STANDALONE_RIGHTS: tuple[str, ...] = ("Access", "Tagging", "Distribute", "Rerepresent")
MODEL_RIGHTS: tuple[str, ...] = (
    "Benchmark",
    "Research",
    "Publish",
    "InternalUse",
    "CommercializeOutput",
    "CommercializeModel",
    "ModelReverseEngineer",
)
FIXED_RIGHTS: tuple[str, ...] = STANDALONE_RIGHTS + MODEL_RIGHTS

# Expected hex digest lengths per algorithm.
DIGEST_HEX_LENGTHS: dict[str, int] = {
    "md5": 32,
    "sha1": 40,
    "sha224": 56,
    "sha256": 64,
    "sha384": 96,
    "sha512": 128,
}


def canonical_json(doc: Any) -> str:
    """Render a document dict exactly as it is written to disk."""
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def compact_json(doc: Any) -> str:
    """Key-sorted single-line JSON, used for fingerprints and store keys."""
    return json.dumps(doc, separators=(",", ":"), sort_keys=True, ensure_ascii=False)


@dataclass(frozen=True)
class Violation:
    """One broken invariant, named by field and rule. Violations are data."""

    field: str
    message: str

    def __str__(self) -> str:
        return f"{self.field}: {self.message}"


# ---------------------------------------------------------------------------
# Parse helpers
# ---------------------------------------------------------------------------


def _expect_mapping(value: Any, path: str) -> dict[str, Any]:
    if not isinstance(value, Mapping):
        raise ParseError(path, f"expected object, got {type(value).__name__}")
    return dict(value)


def _check_fields(
    data: Mapping[str, Any],
    path: str,
    required: frozenset[str] | set[str],
    optional: frozenset[str] | set[str],
    strict: bool,
) -> None:
    unknown = sorted(k for k in data if k not in required and k not in optional)
    if unknown:
        if strict:
            raise ParseError(path, f"unknown fields: {unknown}")
        warnings.warn(
            f"{path}: ignoring unknown fields {unknown}", UnknownFieldWarning, stacklevel=3
        )
    missing = sorted(k for k in required if data.get(k) is None)
    if missing:
        raise ParseError(path, f"missing required fields: {missing}")


def _get_str(data: Mapping[str, Any], key: str, path: str) -> str:
    value = data[key]
    if not isinstance(value, str):
        raise ParseError(f"{path}.{key}", f"expected string, got {type(value).__name__}")
    return value


def _get_opt_str(data: Mapping[str, Any], key: str, path: str) -> str | None:
    value = data.get(key)
    if value is None:
        return None
    if not isinstance(value, str):
        raise ParseError(f"{path}.{key}", f"expected string or null, got {type(value).__name__}")
    return value


def _get_str_default(data: Mapping[str, Any], key: str, path: str, default: str = "") -> str:
    value = data.get(key)
    if value is None:
        return default
    if not isinstance(value, str):
        raise ParseError(f"{path}.{key}", f"expected string, got {type(value).__name__}")
    return value


def _get_int(data: Mapping[str, Any], key: str, path: str) -> int:
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{path}.{key}", f"expected integer, got {type(value).__name__}")
    return value


def _get_opt_int(data: Mapping[str, Any], key: str, path: str) -> int | None:
    value = data.get(key)
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{path}.{key}", f"expected integer or null, got {type(value).__name__}")
    return value


def _get_enum(enum_cls: type, data: Mapping[str, Any], key: str, path: str) -> Any:
    value = data[key]
    if isinstance(value, enum_cls):
        return value
    if not isinstance(value, str):
        raise ParseError(f"{path}.{key}", f"expected string, got {type(value).__name__}")
    try:
        return enum_cls(value)
    except ValueError:
        allowed = ", ".join(m.value for m in enum_cls)
        raise ParseError(f"{path}.{key}", f"invalid value {value!r}; expected one of: {allowed}")


def _get_list(data: Mapping[str, Any], key: str, path: str) -> list[Any]:
    value = data.get(key)
    if value is None:
        return []
    if not isinstance(value, (list, tuple)):
        raise ParseError(f"{path}.{key}", f"expected array, got {type(value).__name__}")
    return list(value)


# ---------------------------------------------------------------------------
# Provenance
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Digest:
    """A content digest: algorithm name plus lowercase hex string."""

    algorithm: str
    hex: str

    def to_dict(self) -> dict[str, Any]:
        return {"algorithm": self.algorithm, "hex": self.hex}

    @classmethod
    def from_dict(cls, data: Any, path: str = "digest", strict: bool = True) -> "Digest":
        data = _expect_mapping(data, path)
        _check_fields(data, path, {"algorithm", "hex"}, set(), strict)
        return cls(algorithm=_get_str(data, "algorithm", path), hex=_get_str(data, "hex", path))


@dataclass(frozen=True)
class ProvenanceRecord:
    """Origin metadata, license-location evidence, and content digests for one
    dataset or data source."""

    subject_id: str
    subject_kind: SubjectKind
    dataset_name: str
    origin_url: str
    outlet_licensed: TriState
    publicly_available: TriState
    license_found_via: LicenseFoundVia
    dataset_version: str | None = None
    origin_year: int | None = None
    description: str = ""
    collection_process: str = ""
    downloaded_outlet: str | None = None
    notes: str = ""
    license_location: str | None = None
    license_content: str | None = None
    digest: Digest | None = None
    size_bytes: int | None = None
    archive_format: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "subject_id": self.subject_id,
            "subject_kind": self.subject_kind.value,
            "dataset_name": self.dataset_name,
            "dataset_version": self.dataset_version,
            "origin_year": self.origin_year,
            "origin_url": self.origin_url,
            "description": self.description,
            "collection_process": self.collection_process,
            "downloaded_outlet": self.downloaded_outlet,
            "outlet_licensed": self.outlet_licensed.value,
            "publicly_available": self.publicly_available.value,
            "notes": self.notes,
            "license_found_via": self.license_found_via.value,
            "license_location": self.license_location,
            "license_content": self.license_content,
            "digest": self.digest.to_dict() if self.digest else None,
            "size_bytes": self.size_bytes,
            "archive_format": self.archive_format,
        }

    @classmethod
    def from_dict(
        cls, data: Any, path: str = "provenance", strict: bool = True
    ) -> "ProvenanceRecord":
        data = _expect_mapping(data, path)
        required = {
            "subject_id",
            "subject_kind",
            "dataset_name",
            "origin_url",
            "outlet_licensed",
            "publicly_available",
            "license_found_via",
        }
        optional = {
            "dataset_version",
            "origin_year",
            "description",
            "collection_process",
            "downloaded_outlet",
            "notes",
            "license_location",
            "license_content",
            "digest",
            "size_bytes",
            "archive_format",
        }
        _check_fields(data, path, required, optional, strict)
        digest = None
        if data.get("digest") is not None:
            digest = Digest.from_dict(data["digest"], f"{path}.digest", strict)
        return cls(
            subject_id=_get_str(data, "subject_id", path),
            subject_kind=_get_enum(SubjectKind, data, "subject_kind", path),
            dataset_name=_get_str(data, "dataset_name", path),
            dataset_version=_get_opt_str(data, "dataset_version", path),
            origin_year=_get_opt_int(data, "origin_year", path),
            origin_url=_get_str(data, "origin_url", path),
            description=_get_str_default(data, "description", path),
            collection_process=_get_str_default(data, "collection_process", path),
            downloaded_outlet=_get_opt_str(data, "downloaded_outlet", path),
            outlet_licensed=_get_enum(TriState, data, "outlet_licensed", path),
            publicly_available=_get_enum(TriState, data, "publicly_available", path),
            notes=_get_str_default(data, "notes", path),
            license_found_via=_get_enum(LicenseFoundVia, data, "license_found_via", path),
            license_location=_get_opt_str(data, "license_location", path),
            license_content=_get_opt_str(data, "license_content", path),
            digest=digest,
            size_bytes=_get_opt_int(data, "size_bytes", path),
            archive_format=_get_opt_str(data, "archive_format", path),
        )


def validate_provenance(record: ProvenanceRecord) -> list[Violation]:
    """Check a provenance record against its invariants.

    Empty report means the record is clean. Violations name the field and the
    broken rule; they are returned, never raised.
    """
    report: list[Violation] = []
    if not record.subject_id.strip():
        report.append(Violation("subject_id", "must be nonempty"))
    if record.subject_kind is SubjectKind.DATASET and record.origin_year is None:
        report.append(Violation("origin_year", "required for subjects of kind 'dataset'"))
    if record.origin_year is not None and record.origin_year <= 0:
        report.append(Violation("origin_year", "must be a positive year"))
    if (
        record.license_found_via is LicenseFoundVia.NONE_FOUND
        and record.license_content is not None
    ):
        report.append(
            Violation("license_content", "must be absent when license_found_via is 'none_found'")
        )
    if record.digest is not None:
        algorithm = record.digest.algorithm.lower()
        expected = DIGEST_HEX_LENGTHS.get(algorithm)
        if expected is None:
            report.append(Violation("digest", f"unknown digest algorithm {record.digest.algorithm!r}"))
        else:
            if len(record.digest.hex) != expected:
                report.append(
                    Violation(
                        "digest",
                        f"hex length {len(record.digest.hex)} does not match "
                        f"{algorithm} digest length {expected}",
                    )
                )
            if any(c not in "0123456789abcdefABCDEF" for c in record.digest.hex):
                report.append(Violation("digest", "hex string contains non-hex characters"))
    if record.size_bytes is not None and record.size_bytes < 0:
        report.append(Violation("size_bytes", "must be nonnegative"))
    return report


# ---------------------------------------------------------------------------
# License range and captures
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LicenseRange:
    """Two consecutive years bracketing when a dataset's contents were likely
    collected. ``start_year`` is always ``end_year - 1``."""

    start_year: int
    end_year: int

    def __post_init__(self) -> None:
        if self.start_year != self.end_year - 1:
            raise ValueError(
                f"license range must span exactly two consecutive years, "
                f"got [{self.start_year}, {self.end_year}]"
            )

    @classmethod
    def ending_at(cls, origin_year: int) -> "LicenseRange":
        return cls(origin_year - 1, origin_year)

    def __contains__(self, year: int) -> bool:
        return self.start_year <= year <= self.end_year

    def to_dict(self) -> dict[str, Any]:
        return {"start_year": self.start_year, "end_year": self.end_year}

    @classmethod
    def from_dict(cls, data: Any, path: str = "range", strict: bool = True) -> "LicenseRange":
        data = _expect_mapping(data, path)
        _check_fields(data, path, {"start_year", "end_year"}, set(), strict)
        return cls(_get_int(data, "start_year", path), _get_int(data, "end_year", path))


@dataclass(frozen=True)
class LicenseCapture:
    """A dated snapshot of a data source's license text, with its selection
    status relative to the license range."""

    source_id: str
    status: CaptureStatus
    capture_year: int | None = None
    capture_url: str | None = None
    content: str | None = None

    def __post_init__(self) -> None:
        if (self.status is CaptureStatus.UNAVAILABLE) != (self.content is None):
            raise ValueError("capture content must be absent exactly when status is 'unavailable'")

    def to_dict(self) -> dict[str, Any]:
        return {
            "source_id": self.source_id,
            "capture_year": self.capture_year,
            "capture_url": self.capture_url,
            "content": self.content,
            "status": self.status.value,
        }

    @classmethod
    def from_dict(cls, data: Any, path: str = "capture", strict: bool = True) -> "LicenseCapture":
        data = _expect_mapping(data, path)
        _check_fields(
            data, path, {"source_id", "status"}, {"capture_year", "capture_url", "content"}, strict
        )
        return cls(
            source_id=_get_str(data, "source_id", path),
            status=_get_enum(CaptureStatus, data, "status", path),
            capture_year=_get_opt_int(data, "capture_year", path),
            capture_url=_get_opt_str(data, "capture_url", path),
            content=_get_opt_str(data, "content", path),
        )


# ---------------------------------------------------------------------------
# Rights and obligations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Obligation:
    """A requirement attached to a right. Identity for set union is the id
    token; wording may vary across licenses that impose the same duty."""

    id: str
    text: str
    kind: ObligationKind

    def to_dict(self) -> dict[str, Any]:
        return {"id": self.id, "text": self.text, "kind": self.kind.value}

    @classmethod
    def from_dict(cls, data: Any, path: str = "obligation", strict: bool = True) -> "Obligation":
        data = _expect_mapping(data, path)
        _check_fields(data, path, {"id", "text", "kind"}, set(), strict)
        return cls(
            id=_get_str(data, "id", path),
            text=_get_str(data, "text", path),
            kind=_get_enum(ObligationKind, data, "kind", path),
        )


def merge_obligations(groups: Iterable[Sequence[Obligation]]) -> tuple[Obligation, ...]:
    """Union obligation lists by id, keeping the first occurrence of each id.

    Idempotent, commutative and associative up to id-equality; the surviving
    wording is the earliest one seen, so pass the authoritative list first.
    """
    seen: dict[str, Obligation] = {}
    for group in groups:
        for obligation in group:
            if obligation.id not in seen:
                seen[obligation.id] = obligation
    return tuple(seen.values())


@dataclass(frozen=True)
class RightEntry:
    """Grant state plus the obligations owed when the right is exercised."""

    grant: Grant
    obligations: tuple[Obligation, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {
            "grant": self.grant.value,
            "obligations": [o.to_dict() for o in self.obligations],
        }

    @classmethod
    def from_dict(cls, data: Any, path: str = "right", strict: bool = True) -> "RightEntry":
        data = _expect_mapping(data, path)
        _check_fields(data, path, {"grant"}, {"obligations"}, strict)
        raw_grant = data["grant"]
        # Boolean shorthand: true marks the right granted, false denied.
        if isinstance(raw_grant, bool):
            grant = Grant.GRANTED if raw_grant else Grant.DENIED
        else:
            grant = _get_enum(Grant, data, "grant", path)
        obligations = tuple(
            Obligation.from_dict(item, f"{path}.obligations[{i}]", strict)
            for i, item in enumerate(_get_list(data, "obligations", path))
        )
        return cls(grant=grant, obligations=obligations)


@dataclass(frozen=True)
class LicenseMetadata:
    """Descriptive header of a license interpretation."""

    licensor: str
    license_name: str
    dataset_name: str
    dataset_version: str | None = None
    credit_notice: str | None = None
    validity_period: str | None = None
    liability_warranty: str | None = None
    designated_third_parties: str | None = None
    additional_conditions: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "licensor": self.licensor,
            "license_name": self.license_name,
            "dataset_name": self.dataset_name,
            "dataset_version": self.dataset_version,
            "credit_notice": self.credit_notice,
            "validity_period": self.validity_period,
            "liability_warranty": self.liability_warranty,
            "designated_third_parties": self.designated_third_parties,
            "additional_conditions": self.additional_conditions,
        }

    @classmethod
    def from_dict(cls, data: Any, path: str = "metadata", strict: bool = True) -> "LicenseMetadata":
        data = _expect_mapping(data, path)
        required = {"licensor", "license_name", "dataset_name"}
        optional = {
            "dataset_version",
            "credit_notice",
            "validity_period",
            "liability_warranty",
            "designated_third_parties",
            "additional_conditions",
        }
        _check_fields(data, path, required, optional, strict)
        return cls(
            licensor=_get_str(data, "licensor", path),
            license_name=_get_str(data, "license_name", path),
            dataset_name=_get_str(data, "dataset_name", path),
            dataset_version=_get_opt_str(data, "dataset_version", path),
            credit_notice=_get_opt_str(data, "credit_notice", path),
            validity_period=_get_opt_str(data, "validity_period", path),
            liability_warranty=_get_opt_str(data, "liability_warranty", path),
            designated_third_parties=_get_opt_str(data, "designated_third_parties", path),
            additional_conditions=_get_opt_str(data, "additional_conditions", path),
        )


def _ordered_rights(entries: Mapping[str, RightEntry], fixed: tuple[str, ...]) -> dict[str, RightEntry]:
    """Reorder a rights map so fixed names come first in canonical order."""
    ordered: dict[str, RightEntry] = {}
    for name in fixed:
        if name in entries:
            ordered[name] = entries[name]
    for name in entries:
        if name not in ordered:
            ordered[name] = entries[name]
    return ordered


@dataclass(frozen=True)
class RightsVector:
    """One license decomposed into metadata, standalone-data rights, rights in
    conjunction with models, and optional custom rights."""

    metadata: LicenseMetadata
    standalone_rights: Mapping[str, RightEntry]
    model_rights: Mapping[str, RightEntry]
    custom_rights: Mapping[str, RightEntry] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "standalone_rights", _ordered_rights(self.standalone_rights, STANDALONE_RIGHTS)
        )
        object.__setattr__(self, "model_rights", _ordered_rights(self.model_rights, MODEL_RIGHTS))
        object.__setattr__(self, "custom_rights", dict(self.custom_rights))

    def right_names(self) -> tuple[str, ...]:
        return FIXED_RIGHTS + tuple(self.custom_rights)

    def entry(self, right_name: str) -> RightEntry | None:
        for group in (self.standalone_rights, self.model_rights, self.custom_rights):
            if right_name in group:
                return group[right_name]
        return None

    def grant(self, right_name: str) -> Grant:
        """The recorded grant, with Unspecified for rights never mentioned."""
        entry = self.entry(right_name)
        return entry.grant if entry is not None else Grant.UNSPECIFIED

    def to_dict(self) -> dict[str, Any]:
        return {
            "metadata": self.metadata.to_dict(),
            "standalone_rights": {k: v.to_dict() for k, v in self.standalone_rights.items()},
            "model_rights": {k: v.to_dict() for k, v in self.model_rights.items()},
            "custom_rights": {k: v.to_dict() for k, v in self.custom_rights.items()},
        }

    @classmethod
    def from_dict(cls, data: Any, path: str = "vector", strict: bool = True) -> "RightsVector":
        data = _expect_mapping(data, path)
        _check_fields(
            data,
            path,
            {"metadata", "standalone_rights", "model_rights"},
            {"custom_rights"},
            strict,
        )

        def parse_group(key: str) -> dict[str, RightEntry]:
            group = _expect_mapping(data.get(key) or {}, f"{path}.{key}")
            return {
                name: RightEntry.from_dict(entry, f"{path}.{key}.{name}", strict)
                for name, entry in group.items()
            }

        return cls(
            metadata=LicenseMetadata.from_dict(data["metadata"], f"{path}.metadata", strict),
            standalone_rights=parse_group("standalone_rights"),
            model_rights=parse_group("model_rights"),
            custom_rights=parse_group("custom_rights"),
        )


def validate_rights_vector(vector: RightsVector) -> list[Violation]:
    """Check completeness of the fixed right sets and custom-key disjointness."""
    report: list[Violation] = []
    for name in STANDALONE_RIGHTS:
        if name not in vector.standalone_rights:
            report.append(Violation(f"standalone_rights.{name}", "missing right"))
    for name in vector.standalone_rights:
        if name not in STANDALONE_RIGHTS:
            report.append(Violation(f"standalone_rights.{name}", "not a standalone right"))
    for name in MODEL_RIGHTS:
        if name not in vector.model_rights:
            report.append(Violation(f"model_rights.{name}", "missing right"))
    for name in vector.model_rights:
        if name not in MODEL_RIGHTS:
            report.append(Violation(f"model_rights.{name}", "not a model-conjunction right"))
    for name in vector.custom_rights:
        if name in FIXED_RIGHTS:
            report.append(Violation(f"custom_rights.{name}", "custom key collides with fixed right"))
    for group_name, group in (
        ("standalone_rights", vector.standalone_rights),
        ("model_rights", vector.model_rights),
        ("custom_rights", vector.custom_rights),
    ):
        for right_name, entry in group.items():
            ids = [o.id for o in entry.obligations]
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            if dupes:
                report.append(
                    Violation(f"{group_name}.{right_name}", f"duplicate obligation ids: {dupes}")
                )
    return report


# ---------------------------------------------------------------------------
# Verified license
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AuditInfo:
    """Reproducibility trailer attached to emitted verified licenses."""

    engine_version: str
    inputs_digest: str
    policy: Mapping[str, bool]
    template_digests: Mapping[str, str] = field(default_factory=dict)
    generated_at: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "engine_version": self.engine_version,
            "inputs_digest": self.inputs_digest,
            "policy": dict(self.policy),
            "template_digests": dict(self.template_digests),
            "generated_at": self.generated_at,
        }

    @classmethod
    def from_dict(cls, data: Any, path: str = "audit", strict: bool = True) -> "AuditInfo":
        data = _expect_mapping(data, path)
        _check_fields(
            data,
            path,
            {"engine_version", "inputs_digest", "policy"},
            {"template_digests", "generated_at"},
            strict,
        )
        return cls(
            engine_version=_get_str(data, "engine_version", path),
            inputs_digest=_get_str(data, "inputs_digest", path),
            policy={k: bool(v) for k, v in _expect_mapping(data["policy"], f"{path}.policy").items()},
            template_digests={
                k: str(v)
                for k, v in _expect_mapping(
                    data.get("template_digests") or {}, f"{path}.template_digests"
                ).items()
            },
            generated_at=_get_opt_str(data, "generated_at", path),
        )


@dataclass(frozen=True)
class VerifiedLicense:
    """The effective rights of a root dataset after restrictive-wins
    reconciliation against every interpreted lineage node.

    ``rights`` preserves the root's literal grant wherever no data source
    restricts it; a right the root granted but some source denied is recorded
    Denied with those sources listed in ``restrictors``. ``changed`` holds the
    rights whose grant differs from the root's own vector, and
    ``residual_risk_flags`` the nodes whose license content was unavailable
    and therefore could not be checked at all.
    """

    root_id: str
    rights: Mapping[str, RightEntry]
    restrictors: Mapping[str, tuple[str, ...]]
    changed: tuple[str, ...]
    residual_risk_flags: tuple[str, ...]
    audit: AuditInfo | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "rights", dict(self.rights))
        object.__setattr__(
            self, "restrictors", {k: tuple(v) for k, v in self.restrictors.items()}
        )
        object.__setattr__(self, "changed", tuple(self.changed))
        object.__setattr__(self, "residual_risk_flags", tuple(self.residual_risk_flags))

    def right_names(self) -> tuple[str, ...]:
        return tuple(self.rights)

    def grant(self, right_name: str) -> Grant:
        entry = self.rights.get(right_name)
        return entry.grant if entry is not None else Grant.UNSPECIFIED

    def is_granted(self, right_name: str) -> bool:
        return self.grant(right_name) is Grant.GRANTED

    def to_dict(self) -> dict[str, Any]:
        return {
            "root_id": self.root_id,
            "rights": {k: v.to_dict() for k, v in self.rights.items()},
            "restrictors": {k: list(v) for k, v in self.restrictors.items()},
            "changed": list(self.changed),
            "residual_risk_flags": list(self.residual_risk_flags),
            "audit": self.audit.to_dict() if self.audit else None,
        }

    @classmethod
    def from_dict(cls, data: Any, path: str = "verified", strict: bool = True) -> "VerifiedLicense":
        data = _expect_mapping(data, path)
        _check_fields(
            data,
            path,
            {"root_id", "rights", "restrictors", "changed", "residual_risk_flags"},
            {"audit"},
            strict,
        )
        rights = {
            name: RightEntry.from_dict(entry, f"{path}.rights.{name}", strict)
            for name, entry in _expect_mapping(data["rights"], f"{path}.rights").items()
        }
        restrictors = {
            name: tuple(str(s) for s in ids)
            for name, ids in _expect_mapping(data["restrictors"], f"{path}.restrictors").items()
        }
        audit = None
        if data.get("audit") is not None:
            audit = AuditInfo.from_dict(data["audit"], f"{path}.audit", strict)
        return cls(
            root_id=_get_str(data, "root_id", path),
            rights=rights,
            restrictors=restrictors,
            changed=tuple(str(r) for r in _get_list(data, "changed", path)),
            residual_risk_flags=tuple(
                str(r) for r in _get_list(data, "residual_risk_flags", path)
            ),
            audit=audit,
        )


# ---------------------------------------------------------------------------
# Usage scenarios and assessment tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UsageScenario:
    """A commercial action to check, expressed as the rights it needs."""

    id: str
    required_rights: tuple[str, ...]

    def __post_init__(self) -> None:
        deduped = tuple(dict.fromkeys(self.required_rights))
        if not deduped:
            raise ValueError(f"scenario {self.id!r} must require at least one right")
        object.__setattr__(self, "required_rights", deduped)

    def to_dict(self) -> dict[str, Any]:
        return {"id": self.id, "required_rights": list(self.required_rights)}

    @classmethod
    def from_dict(cls, data: Any, path: str = "scenario", strict: bool = True) -> "UsageScenario":
        data = _expect_mapping(data, path)
        _check_fields(data, path, {"id", "required_rights"}, set(), strict)
        rights = _get_list(data, "required_rights", path)
        if not rights:
            raise ParseError(f"{path}.required_rights", "must be a nonempty array")
        return cls(id=_get_str(data, "id", path), required_rights=tuple(str(r) for r in rights))


@dataclass(frozen=True)
class AssessmentRow:
    """One scenario's decision: permitted flag, obligation ids owed, and the
    rights (with their restrictors) that block a denied scenario."""

    scenario_id: str
    permitted: bool
    obligations: tuple[str, ...]
    blocking_rights: tuple[tuple[str, tuple[str, ...]], ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "scenario_id": self.scenario_id,
            "permitted": self.permitted,
            "obligations": list(self.obligations),
            "blocking_rights": [
                {"right": right, "restrictors": list(restrictors)}
                for right, restrictors in self.blocking_rights
            ],
        }

    @classmethod
    def from_dict(cls, data: Any, path: str = "row", strict: bool = True) -> "AssessmentRow":
        data = _expect_mapping(data, path)
        _check_fields(
            data, path, {"scenario_id", "permitted", "obligations", "blocking_rights"}, set(), strict
        )
        permitted = data["permitted"]
        if not isinstance(permitted, bool):
            raise ParseError(f"{path}.permitted", "expected boolean")
        blocking: list[tuple[str, tuple[str, ...]]] = []
        for i, item in enumerate(_get_list(data, "blocking_rights", path)):
            item = _expect_mapping(item, f"{path}.blocking_rights[{i}]")
            blocking.append(
                (str(item["right"]), tuple(str(s) for s in item.get("restrictors", [])))
            )
        return cls(
            scenario_id=_get_str(data, "scenario_id", path),
            permitted=permitted,
            obligations=tuple(str(o) for o in _get_list(data, "obligations", path)),
            blocking_rights=tuple(blocking),
        )


@dataclass(frozen=True)
class AssessmentTable:
    """Per-scenario decisions for one dataset, plus the obligation legend and
    an advisory list of obligation ids attached to granted rights no shipped
    scenario asked about."""

    dataset_id: str
    dataset_name: str
    rows: tuple[AssessmentRow, ...]
    obligation_legend: Mapping[str, Obligation]
    advisory_obligations: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(self.rows))
        object.__setattr__(self, "obligation_legend", dict(self.obligation_legend))
        object.__setattr__(self, "advisory_obligations", tuple(self.advisory_obligations))

    def row(self, scenario_id: str) -> AssessmentRow:
        for row in self.rows:
            if row.scenario_id == scenario_id:
                return row
        raise KeyError(scenario_id)

    def to_dict(self) -> dict[str, Any]:
        return {
            "dataset_id": self.dataset_id,
            "dataset_name": self.dataset_name,
            "rows": [row.to_dict() for row in self.rows],
            "obligation_legend": {k: v.to_dict() for k, v in self.obligation_legend.items()},
            "advisory_obligations": list(self.advisory_obligations),
        }

    @classmethod
    def from_dict(cls, data: Any, path: str = "assessment", strict: bool = True) -> "AssessmentTable":
        data = _expect_mapping(data, path)
        _check_fields(
            data,
            path,
            {"dataset_id", "dataset_name", "rows", "obligation_legend"},
            {"advisory_obligations"},
            strict,
        )
        return cls(
            dataset_id=_get_str(data, "dataset_id", path),
            dataset_name=_get_str(data, "dataset_name", path),
            rows=tuple(
                AssessmentRow.from_dict(row, f"{path}.rows[{i}]", strict)
                for i, row in enumerate(_get_list(data, "rows", path))
            ),
            obligation_legend={
                k: Obligation.from_dict(v, f"{path}.obligation_legend.{k}", strict)
                for k, v in _expect_mapping(
                    data["obligation_legend"], f"{path}.obligation_legend"
                ).items()
            },
            advisory_obligations=tuple(
                str(o) for o in _get_list(data, "advisory_obligations", path)
            ),
        )
