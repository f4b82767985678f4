"""The bundled identity corpus and cross-file consistency."""

from __future__ import annotations

from importlib import resources

from .expr import IdentitySyntaxError, evaluate_identity, parse_identity, pretty_expr
from .ring import DomainError

# Names whose definitions must be identical in every corpus file.
SHARED_FORMULAS = ("p2", "p1", "q2", "p0", "q1", "q0")


def bundled_identity_files():
    """``{file name: text}`` for the identity files shipped with the package."""
    root = resources.files("brauercheck") / "identities"
    return {
        p.name: p.read_text(encoding="utf-8")
        for p in sorted(root.iterdir(), key=lambda p: p.name)
        if p.name.endswith(".id")
    }


def case_group(name):
    stem = name.rsplit(".", 1)[0]
    for tag in ("even", "odd"):
        if stem.endswith("_" + tag):
            return tag
    return "generic"


def check_text(text, source=None, domain=None):
    """Return ``(ok, message)``; syntax and domain errors count as failures."""
    try:
        ast = parse_identity(text, source)
        verdict = evaluate_identity(ast, domain)
    except (IdentitySyntaxError, DomainError) as exc:
        return False, f"error: {exc}"
    if verdict.holds:
        return True, "holds"
    return False, f"fails: lhs - rhs = {verdict.difference.to_str()}"


def corpus_consistency(texts):
    """Bindings shared between files must agree.

    The coefficient formulas in ``SHARED_FORMULAS`` must agree across the
    whole corpus; every other name must agree within a case group.
    Returns a list of human-readable conflicts (empty when consistent).
    """
    seen = {}
    conflicts = []
    for name, text in texts.items():
        try:
            ast = parse_identity(text, name)
        except IdentitySyntaxError as exc:
            conflicts.append(f"{name}: {exc}")
            continue
        group = case_group(name)
        for b in ast.bindings:
            key = b.name if b.name in SHARED_FORMULAS else (group, b.name)
            rendered = pretty_expr(b.expr)
            if key in seen and seen[key][1] != rendered:
                conflicts.append(f"{name}: '{b.name}' differs from {seen[key][0]}")
            else:
                seen.setdefault(key, (name, rendered))
    return conflicts


def check_corpus(texts, domain=None):
    """Per-file verdicts plus the consistency report."""
    results = {name: check_text(text, name, domain) for name, text in texts.items()}
    return results, corpus_consistency(texts)
