"""Instance and certificate serialization.

All numeric scalars travel as strings ("-3", "2/7") so files survive
any JSON reader without precision loss.  Serialization is canonical:
sorted keys, fixed separators, trailing newline.  Certificates embed a
timestamp; set WARING_TIMESTAMP to pin it when byte-identical output
matters.
"""

from __future__ import annotations

import datetime
import hashlib
import json
import os
from dataclasses import dataclass, field

from sympy import isprime

from .linalg import QQ, primitive_int_vector
from .pointconfig import PointConfiguration
from .polyring import MONOMIAL_ORDER_ID, n_monomials, polynomial_to_dual

INSTANCE_FORMAT = "waring6/instance"
CERTIFICATE_FORMAT = "waring6/certificate"
WITNESS_FORMAT = "waring6/witness"
SAMPLES_FORMAT = "waring6/samples"


class InputError(ValueError):
    """Malformed input, with the JSON path of the offending element."""

    def __init__(self, path, message):
        self.path = path
        super().__init__("%s: %s" % (path, message))


@dataclass
class Instance:
    points: PointConfiguration
    phi: list | None
    char: int
    convention: str = "dual"
    metadata: dict = field(default_factory=dict)


def _parse_scalar(s, path):
    if not isinstance(s, str):
        raise InputError(path, "scalars must be strings, got %s" % type(s).__name__)
    t = s.strip()
    try:
        if "/" in t:
            num, den = t.split("/")
            den_i = int(den)
            if den_i == 0:
                raise ValueError
            return QQ(int(num), den_i)
        return QQ(int(t))
    except (ValueError, ZeroDivisionError):
        raise InputError(path, "cannot parse %r as an integer or fraction" % s)


def _scalar_mod(x, p, path):
    den = int(x.denominator)
    if den % p == 0:
        raise InputError(path, "denominator divisible by the characteristic")
    return int(x.numerator) % p * pow(den % p, -1, p) % p


def load_instance(source) -> Instance:
    """Parse an instance from a path, file object, or dict.

    Checks the format tag, the frozen monomial order, the coefficient
    convention, the characteristic, and every scalar; positions in
    error messages use JSON-path notation.
    """
    if isinstance(source, dict):
        doc = source
    elif hasattr(source, "read"):
        doc = json.load(source)
    else:
        with open(source) as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as e:
                raise InputError("$", "not valid JSON: %s" % e)
    if not isinstance(doc, dict):
        raise InputError("$", "top level must be an object")
    if doc.get("format") != INSTANCE_FORMAT:
        raise InputError("format", "expected %r" % INSTANCE_FORMAT)
    order = doc.get("monomial_order")
    if order != MONOMIAL_ORDER_ID:
        raise InputError(
            "monomial_order",
            "expected %r, got %r; re-encode the input in the frozen order"
            % (MONOMIAL_ORDER_ID, order),
        )
    convention = doc.get("convention", "dual")
    if convention not in ("dual", "polynomial"):
        raise InputError("convention", "must be 'dual' or 'polynomial'")
    char_s = doc.get("char", "0")
    if not isinstance(char_s, str):
        raise InputError("char", "must be a string")
    try:
        char = int(char_s)
    except ValueError:
        raise InputError("char", "cannot parse %r" % char_s)
    if char != 0 and (char < 101 or not isprime(char)):
        raise InputError("char", "characteristic must be 0 or a prime >= 101")

    raw_points = doc.get("points")
    if not isinstance(raw_points, list) or not raw_points:
        raise InputError("points", "must be a nonempty array")
    if len(raw_points) > 18:
        raise InputError("points", "at most 18 points are supported")
    pts = []
    for i, row in enumerate(raw_points):
        if not isinstance(row, list) or len(row) != 4:
            raise InputError("points[%d]" % i, "must be an array of 4 coordinates")
        coords = [_parse_scalar(c, "points[%d][%d]" % (i, j)) for j, c in enumerate(row)]
        if char:
            coords = [_scalar_mod(c, char, "points[%d][%d]" % (i, j))
                      for j, c in enumerate(coords)]
        if all(c == 0 for c in coords):
            raise InputError("points[%d]" % i, "zero vector is not a projective point")
        pts.append(coords)
    try:
        config = PointConfiguration(pts, char=char)
    except ValueError as e:
        raise InputError("points", str(e))

    phi = None
    if "sextic" in doc:
        raw = doc["sextic"]
        if not isinstance(raw, list) or len(raw) != n_monomials(6):
            raise InputError("sextic", "must be an array of 84 coefficients")
        vals = [_parse_scalar(c, "sextic[%d]" % i) for i, c in enumerate(raw)]
        if convention == "polynomial":
            if char:
                vals = [_scalar_mod(v, char, "sextic[%d]" % i) for i, v in enumerate(vals)]
                vals = polynomial_to_dual(vals, 6, char)
            else:
                vals = polynomial_to_dual(vals, 6, 0)
        elif char:
            vals = [_scalar_mod(v, char, "sextic[%d]" % i) for i, v in enumerate(vals)]
        if char:
            phi = [int(v) % char for v in vals]
        else:
            phi = primitive_int_vector(vals)
        if not any(phi):
            raise InputError("sextic", "the form is zero")

    metadata = doc.get("metadata", {})
    if not isinstance(metadata, dict):
        raise InputError("metadata", "must be an object")
    return Instance(config, phi, char, convention, metadata)


def load_witness(source):
    """A witness file holds one quartic as 35 coefficient strings."""
    if hasattr(source, "read"):
        doc = json.load(source)
    elif isinstance(source, dict):
        doc = source
    else:
        with open(source) as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as e:
                raise InputError("$", "not valid JSON: %s" % e)
    if doc.get("format") != WITNESS_FORMAT:
        raise InputError("format", "expected %r" % WITNESS_FORMAT)
    raw = doc.get("quartic")
    if not isinstance(raw, list) or len(raw) != n_monomials(4):
        raise InputError("quartic", "must be an array of 35 coefficients")
    vals = [_parse_scalar(c, "quartic[%d]" % i) for i, c in enumerate(raw)]
    return primitive_int_vector(vals)


def _stringify(obj):
    """Recursive conversion for canonical output: every number becomes
    a string, containers recurse, bools and None pass through."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, str):
        return obj
    if isinstance(obj, float):
        return repr(obj)
    if isinstance(obj, (list, tuple)):
        return [_stringify(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): _stringify(v) for k, v in obj.items()}
    if isinstance(obj, int):
        return str(obj)
    if hasattr(obj, "numerator") and hasattr(obj, "denominator"):
        num, den = int(obj.numerator), int(obj.denominator)
        return str(num) if den == 1 else "%d/%d" % (num, den)
    try:
        import numpy as np

        if isinstance(obj, np.integer):
            return str(int(obj))
    except ImportError:
        pass
    return str(obj)


def _dump(doc, path):
    payload = json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"
    if path is None:
        return payload
    with open(path, "w") as fh:
        fh.write(payload)
    return payload


def instance_document(points: PointConfiguration, phi, char, metadata=None):
    doc = {
        "format": INSTANCE_FORMAT,
        "monomial_order": MONOMIAL_ORDER_ID,
        "convention": "dual",
        "char": str(char),
        "points": [[str(int(c)) for c in P] for P in points.points],
    }
    if phi is not None:
        doc["sextic"] = [_stringify(x) for x in phi]
    if metadata:
        doc["metadata"] = _stringify(metadata)
    return doc


def save_instance(points, phi, char, path, metadata=None):
    return _dump(instance_document(points, phi, char, metadata), path)


def save_witness(quartic, path):
    doc = {"format": WITNESS_FORMAT, "quartic": [str(int(c)) for c in quartic]}
    return _dump(doc, path)


def save_samples(samples, path, metadata=None):
    doc = {
        "format": SAMPLES_FORMAT,
        "monomial_order": MONOMIAL_ORDER_ID,
        "samples": [[str(int(c)) for c in s] for s in samples],
    }
    if metadata:
        doc["metadata"] = _stringify(metadata)
    return _dump(doc, path)


def _timestamp():
    pinned = os.environ.get("WARING_TIMESTAMP")
    if pinned:
        return pinned
    return datetime.datetime.now(datetime.timezone.utc).isoformat()


def certificate_document(cert, input_doc=None):
    """Canonical certificate serialization from a certify() result."""
    from . import __version__

    doc = {
        "format": CERTIFICATE_FORMAT,
        "tool": "waring6 %s" % __version__,
        "monomial_order": MONOMIAL_ORDER_ID,
        "status": cert.status,
        "rank_certified": None if cert.rank_certified is None else str(cert.rank_certified),
        "checks": _stringify(cert.checks),
        "data": _stringify(cert.data),
        "seed": str(cert.seed),
        "timestamp": _timestamp(),
    }
    if input_doc is not None:
        canon = json.dumps(input_doc, sort_keys=True, separators=(",", ":"))
        doc["input_sha256"] = hashlib.sha256(canon.encode()).hexdigest()
    return doc


def save_certificate(cert, path, input_doc=None):
    return _dump(certificate_document(cert, input_doc), path)
