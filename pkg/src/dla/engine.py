"""Restrictive-wins license resolution over a lineage graph.

A use is permitted only when the root dataset's license and every interpreted
data-source license agree that it is; any interpreted source that withholds a
right (explicitly denied or simply unspecified) forces the verified grant to
Denied and is recorded as a restrictor. Sources whose license content is
unavailable do not restrict anything by default; they are surfaced as
residual risk instead. The ``unknown_denies`` policy flips that default for
conservative callers.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Mapping

from .errors import MissingRootInterpretation, RightSpaceMismatch, UninterpretedNode
from .lineage import LineageGraph
from .model import (
    FIXED_RIGHTS,
    AuditInfo,
    Grant,
    RightEntry,
    RightsVector,
    VerifiedLicense,
    compact_json,
    merge_obligations,
)
from .version import __version__

ENGINE_VERSION = __version__


@dataclass(frozen=True)
class EnginePolicy:
    """Resolution policy knobs. Part of every cache key and audit trailer."""

    unknown_denies: bool = False

    def to_dict(self) -> dict[str, bool]:
        return {"unknown_denies": self.unknown_denies}

    def token(self) -> str:
        return f"unknown_denies={int(self.unknown_denies)}"


def fingerprint_inputs(
    graph: LineageGraph,
    interpretations: Mapping[str, RightsVector | None],
    policy: EnginePolicy,
) -> str:
    """Stable digest of everything the engine's answer depends on."""
    doc = {
        "graph": graph.to_dict(),
        "interpretations": {
            subject_id: (vector.to_dict() if vector is not None else None)
            for subject_id, vector in sorted(interpretations.items())
        },
        "policy": policy.to_dict(),
    }
    return hashlib.sha256(compact_json(doc).encode("utf-8")).hexdigest()


def _right_space(
    root_vector: RightsVector,
    vectors: list[RightsVector],
) -> tuple[str, ...]:
    names = list(FIXED_RIGHTS) + list(root_vector.custom_rights)
    seen = set(names)
    extra: set[str] = set()
    for vector in vectors:
        for name in vector.custom_rights:
            if name not in seen:
                extra.add(name)
    return tuple(names) + tuple(sorted(extra))


def verify(
    graph: LineageGraph,
    interpretations: Mapping[str, RightsVector | None],
    policy: EnginePolicy = EnginePolicy(),
    *,
    template_digests: Mapping[str, str] | None = None,
    generated_at: str | None = None,
) -> VerifiedLicense:
    """Resolve the verified license of the graph's root dataset.

    ``interpretations`` must cover every graph node: a rights vector for each
    interpreted subject, or None for a subject whose license content is
    unavailable. The output is deterministic: node order never matters, and
    obligation unions list the root's obligations first, then each source's
    in subject-id order.
    """
    if graph.root_id not in interpretations or interpretations[graph.root_id] is None:
        raise MissingRootInterpretation(graph.root_id)
    for node_id in sorted(graph.nodes):
        if node_id not in interpretations:
            raise UninterpretedNode(node_id)

    root_vector = interpretations[graph.root_id]
    assert root_vector is not None
    source_ids = sorted(n for n in graph.nodes if n != graph.root_id)
    interpreted = [(s, interpretations[s]) for s in source_ids if interpretations[s] is not None]
    unavailable = tuple(s for s in source_ids if interpretations[s] is None)

    right_space = _right_space(root_vector, [v for _, v in interpreted])

    rights: dict[str, RightEntry] = {}
    restrictors: dict[str, tuple[str, ...]] = {}
    changed: list[str] = []

    for right in right_space:
        root_grant = root_vector.grant(right)
        root_entry = root_vector.entry(right) or RightEntry(grant=Grant.UNSPECIFIED)
        denying = [s for s, v in interpreted if v.grant(right) is not Grant.GRANTED]
        if policy.unknown_denies:
            denying.extend(unavailable)
        denying.sort()

        if root_grant is Grant.GRANTED and not denying:
            obligations = merge_obligations(
                [root_entry.obligations]
                + [
                    v.entry(right).obligations
                    for _, v in interpreted
                    if v.entry(right) is not None
                ]
            )
            rights[right] = RightEntry(grant=Grant.GRANTED, obligations=obligations)
            restrictors[right] = ()
        elif root_grant is Grant.GRANTED:
            rights[right] = RightEntry(grant=Grant.DENIED, obligations=root_entry.obligations)
            restrictors[right] = tuple(denying)
            changed.append(right)
        else:
            # The root itself withholds the right; sources cannot restrict
            # further and the root's literal grant is preserved.
            rights[right] = root_entry
            restrictors[right] = ()

    return VerifiedLicense(
        root_id=graph.root_id,
        rights=rights,
        restrictors=restrictors,
        changed=tuple(changed),
        residual_risk_flags=unavailable,
        audit=AuditInfo(
            engine_version=ENGINE_VERSION,
            inputs_digest=fingerprint_inputs(graph, interpretations, policy),
            policy=policy.to_dict(),
            template_digests=dict(template_digests or {}),
            generated_at=generated_at,
        ),
    )


def diff_rights(own: RightsVector, verified: VerifiedLicense) -> set[str]:
    """Rights whose grant differs between a dataset's own license and its
    verified license. Compares grants only; obligation or restrictor changes
    do not count.
    """
    own_space = set(own.right_names())
    verified_space = set(verified.right_names())
    if own_space != verified_space:
        raise RightSpaceMismatch(
            tuple(sorted(own_space - verified_space)),
            tuple(sorted(verified_space - own_space)),
        )
    return {name for name in own_space if own.grant(name) is not verified.grant(name)}
