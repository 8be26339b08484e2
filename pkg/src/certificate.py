"""
Closure certificates: a JSON record of an invariant block and the permutation
each generator induces on it, which anyone can replay against the generators.

    {
      "dimension": 1,
      "invariant_block": [["0"], ["1"]],
      "generator_permutations": [[1, 0]],
      "group_order": 2,
      "status": "complete"
    }
"""

import json
import os
import tempfile
from pathlib import Path
from typing import Any, Sequence, Union

from .constants import (
    CERT_DIMENSION,
    CERT_ELEMENTS,
    CERT_GENERATOR_PERMUTATIONS,
    CERT_GROUP_ORDER,
    CERT_INVARIANT_BLOCK,
    CERT_STATUS,
)
from .dyadic_core import InvalidInputError, Subblock, validate_block
from .element import Element
from .logger import get_module_logger
from .torsion import ClosureResult, ClosureStatus, NotInvariantError, permutation_on_block

logger = get_module_logger("certificate")

REQUIRED_KEYS = (
    CERT_DIMENSION,
    CERT_INVARIANT_BLOCK,
    CERT_GENERATOR_PERMUTATIONS,
    CERT_GROUP_ORDER,
    CERT_STATUS,
)


class CertificateError(InvalidInputError):
    pass


def certificate_from_closure(result: ClosureResult) -> dict[str, Any]:
    block = result.invariant_block
    certificate: dict[str, Any] = {
        CERT_DIMENSION: result.dimension,
        CERT_INVARIANT_BLOCK: [list(words) for words in block.words()] if block else None,
        CERT_GENERATOR_PERMUTATIONS: [list(p) for p in result.generator_permutations],
        CERT_GROUP_ORDER: result.group_order,
        CERT_STATUS: result.status.value,
    }
    if result.elements is not None:
        certificate[CERT_ELEMENTS] = [list(p) for p in result.elements]
    return certificate


def certificate_to_json(certificate: dict[str, Any]) -> str:
    return json.dumps(certificate, indent=2) + "\n"


def certificate_from_json(text: str) -> dict[str, Any]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise CertificateError(f"Certificate is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise CertificateError("Certificate must be a JSON object")
    missing = [key for key in REQUIRED_KEYS if key not in data]
    if missing:
        raise CertificateError(f"Certificate is missing keys: {missing}")
    try:
        ClosureStatus(data[CERT_STATUS])
    except ValueError as e:
        raise CertificateError(f"Unknown certificate status: {data[CERT_STATUS]!r}") from e
    return data


def replay_certificate(certificate: dict[str, Any], generators: Sequence[Element]) -> bool:
    """Whether every generator acts on the recorded block exactly as recorded."""
    words = certificate.get(CERT_INVARIANT_BLOCK)
    permutations = certificate.get(CERT_GENERATOR_PERMUTATIONS) or []
    if words is None or len(permutations) != len(generators):
        return False
    dimension = certificate[CERT_DIMENSION]
    B = validate_block([Subblock(tuple(w)) for w in words], dimension)
    if B.words() != [tuple(w) for w in words]:
        logger.warning("Certificate block is not in canonical order")
        return False
    for idx, (g, recorded) in enumerate(zip(generators, permutations)):
        try:
            actual = permutation_on_block(g, B)
        except NotInvariantError as e:
            logger.info(f"Generator {idx} does not fix the certificate block: {e}")
            return False
        if list(actual) != list(recorded):
            logger.info(f"Generator {idx} permutation differs from the certificate")
            return False
    return True


def write_text_atomic(path: Union[str, Path], text: str) -> None:
    target = Path(path)
    directory = target.parent
    directory.mkdir(parents=True, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(prefix=f".{target.name}.", dir=str(directory))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as tmp_file:
            tmp_file.write(text)
            tmp_file.flush()
            os.fsync(tmp_file.fileno())
        os.replace(tmp_path, target)
    finally:
        if os.path.exists(tmp_path):
            try:
                os.remove(tmp_path)
            except OSError:
                pass
    logger.debug(f"Wrote {len(text)} characters to {target}")
