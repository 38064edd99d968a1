"""Generating-set files.

A file is a JSON array of entries `{"free": [...], "torsion": [...]}` (torsion may be
omitted on torsion-free groups). By default the array is the whole symmetric multiset;
with `symmetrize=True` it is read as s_1..s_l' and the negations are appended.
"""

import json
import logging

from exceptions import GeneratingSetFormatError, GroupError
from models.group import GeneratingSet, canonical_generating_set

logger = logging.getLogger(__name__)


def _parse_entry(g, index, entry):
    if not isinstance(entry, dict) or 'free' not in entry:
        raise GeneratingSetFormatError("expected an object with a 'free' list", index)
    free = entry['free']
    torsion = entry.get('torsion', [])
    if not isinstance(free, list) or not isinstance(torsion, list):
        raise GeneratingSetFormatError("'free' and 'torsion' must be lists", index)
    if not all(isinstance(a, int) and not isinstance(a, bool) for a in free + torsion):
        raise GeneratingSetFormatError("coordinates must be integers", index)
    try:
        return g.element(free, torsion)
    except GroupError as e:
        raise GeneratingSetFormatError(str(e), index) from e


def parse_generating_set(g, entries, symmetrize=False):
    if not isinstance(entries, list) or not entries:
        raise GeneratingSetFormatError("generating set must be a non-empty JSON array")
    elements = [_parse_entry(g, i, entry) for i, entry in enumerate(entries)]
    if symmetrize:
        return GeneratingSet.from_half(g, elements)
    s = GeneratingSet(tuple(elements))
    index = s.unpaired_index(g)
    if index is not None:
        raise GeneratingSetFormatError(f"{elements[index]!r} has no matching negation", index)
    return s.paired(g)


def load_generating_set(source, g, symmetrize=False):
    """Resolve `standard` to S^0, otherwise read and validate the JSON file at `source`."""
    if source in (None, 'standard'):
        return canonical_generating_set(g)
    try:
        with open(source) as handle:
            entries = json.load(handle)
    except OSError as e:
        raise GroupError(f"cannot read generating set {source}: {e}") from e
    except json.JSONDecodeError as e:
        raise GeneratingSetFormatError(f"{source} is not valid JSON: {e}") from e
    s = parse_generating_set(g, entries, symmetrize)
    logger.info(f"Loaded {len(s)} generators for {g.describe()} from {source}")
    return s

