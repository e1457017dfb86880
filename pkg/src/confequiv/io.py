"""Ingestion of groups, generating tuples, partitions and claims, and JSON output."""

from __future__ import annotations

import json
from pathlib import Path

from .decomposition import DecompositionClaim, Piece, SetDescription, classical_free_claim
from .errors import ConfEquivError, InvalidGroupSpec, UnsupportedDescription
from .groups import FreeGroup, GroupView, RepresentativePair, build_group, generating_tuple
from .paper_groups import KElement, PaperGroup
from .partitions import (
    OraclePartition,
    Partition,
    first_letter_partition,
    singletons,
    trivial_partition,
)


class InputError(ConfEquivError):
    pass


def load_json_arg(text: str):
    """A JSON literal, or the path of a file holding one."""
    text = text.strip()
    if text[:1] in "[{\"" or text in ("null", "true", "false"):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from exc
    path = Path(text)
    if path.is_file():
        try:
            return json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON in {path}: {exc}") from exc
    return None


def parse_group(text: str) -> GroupView:
    obj = load_json_arg(text)
    if obj is None:
        return build_group(text)
    return build_group(obj)


def split_tokens(text: str) -> list[str]:
    """Split on commas that are not nested inside brackets."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    if "".join(cur).strip():
        out.append("".join(cur).strip())
    return out


def parse_elements(view: GroupView, text: str) -> list:
    obj = load_json_arg(text) if text.strip().startswith("[") else None
    tokens = obj if obj is not None else split_tokens(text)
    return [view.parse_element(tok) for tok in tokens]


def parse_gens(view: GroupView, text: str | None, check: bool = True):
    entries = view.default_generators() if not text else parse_elements(view, text)
    return generating_tuple(view, entries, check=check)


def gen_names(view: GroupView, gens) -> list[str]:
    if isinstance(view, PaperGroup):
        defaults = view.default_generators()
        if tuple(gens) == defaults:
            return ["k1", "k2", "k3"]
    return [view.label(g) for g in gens]


def parse_partition(view: GroupView, text: str | None):
    text = (text or "singletons").strip()
    if text == "singletons":
        if not view.is_finite:
            raise InputError("'singletons' needs a finite group")
        return singletons(view)
    if text == "trivial":
        if view.is_finite:
            return trivial_partition(view)
        return OraclePartition(1, lambda x: 1, name="trivial")
    if text == "first-letter":
        if not isinstance(view, FreeGroup):
            raise InputError("'first-letter' needs a free group")
        return first_letter_partition(view)
    if text == "a-parity":
        if not isinstance(view, PaperGroup):
            raise InputError("'a-parity' needs K, G or H")
        return OraclePartition(2, lambda x: 1 + x.a % 2, name="a-parity")
    obj = load_json_arg(text)
    if obj is None:
        raise InputError(f"unknown partition {text!r}")
    if not view.is_finite:
        raise InputError("explicit partitions need a finite group; use a built-in oracle")
    blocks = [[view.parse_element(tok) for tok in block] for block in obj]
    return Partition(blocks, universe=view.elements())


def partition_json(view: GroupView, P) -> object:
    if P.oracle:
        return {"oracle": P.name, "m": P.m}
    return [[view.label(x) for x in sorted(b, key=_order_key)] for b in P.blocks]


def _order_key(x):
    return x if isinstance(x, int) else repr(x)


def parse_word(view: GroupView, gens, names: list[str], text: str) -> RepresentativePair:
    """Words are space- or ``*``-separated generator names with optional
    ``^k``; in a free group an uppercase letter is the inverse letter."""
    tokens = []
    for tok in text.replace("*", " ").split():
        if isinstance(view, FreeGroup) and len(tok) > 1 and "^" not in tok and tok.isalpha():
            tokens.extend(tok)
        else:
            tokens.append(tok)
    expanded = []
    for tok in tokens:
        if isinstance(view, FreeGroup) and tok.isalpha() and tok.isupper() and tok.lower() in names:
            expanded.append(tok.lower() + "^-1")
        else:
            expanded.append(tok)
    return RepresentativePair.parse(" ".join(expanded), names)


def parse_claim(view: GroupView, gens, text: str | None) -> DecompositionClaim:
    if not text or text == "classical":
        if not isinstance(view, FreeGroup) or view.rank < 2:
            raise InputError("the classical claim needs a free group of rank >= 2")
        return classical_free_claim(view)
    obj = load_json_arg(text)
    if not isinstance(obj, dict) or "groups" not in obj:
        raise InputError("claim must be an object with a 'groups' list")
    names = gen_names(view, gens)
    groups = []
    for grp in obj["groups"]:
        pieces = []
        for piece in grp:
            word = parse_word(view, gens, names, str(piece.get("translator", "e")))
            spec = piece.get("set", {})
            if "prefixes" in spec:
                if not isinstance(view, FreeGroup):
                    raise UnsupportedDescription("prefix sets need a free group")
                sd = SetDescription.prefix(view.parse_element(p) for p in spec["prefixes"])
            elif "elements" in spec:
                sd = SetDescription.explicit(view.parse_element(x) for x in spec["elements"])
            else:
                raise InputError("each piece needs 'prefixes' or 'elements'")
            pieces.append(Piece(word, sd))
        groups.append(tuple(pieces))
    return DecompositionClaim(tuple(groups))


def parse_kelement(text: str) -> KElement:
    obj = load_json_arg(text)
    if obj is None:
        raise InvalidGroupSpec(f"expected a K element literal, got {text!r}")
    return KElement.from_json(obj)


def dumps(obj, indent: int | None = 2) -> str:
    if indent is not None and indent < 0:
        return json.dumps(obj, sort_keys=True, ensure_ascii=False, separators=(",", ":"))
    return json.dumps(obj, indent=indent, sort_keys=True, ensure_ascii=False)
