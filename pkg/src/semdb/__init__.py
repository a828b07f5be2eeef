"""Lexical semantic database toolchain.

Lexicon formalism with inheritance and feature appropriateness, semantic
class catalog, first-match transformation rules, and interface-term (VIT)
parsing, validation and scope resolution.
"""

from .catalog import Catalog, builtin_catalog, predscheme_instances
from .plex import (
    check_hierarchy,
    check_value,
    effective_features,
    expand_base,
    parse_lexicon_source,
    print_lexicon,
)
from .scope import build_scope_graph, default_plugging, enumerate_pluggings
from .trafo import apply_rules, emit_outputs, parse_rules, render_template
from .validate import PatternIndex, validate
from .vit import parse_vit, print_vit

__all__ = [
    "Catalog", "PatternIndex", "apply_rules", "build_scope_graph", "builtin_catalog",
    "check_hierarchy", "check_value", "default_plugging", "effective_features",
    "emit_outputs", "enumerate_pluggings", "expand_base", "parse_lexicon_source",
    "parse_rules", "parse_vit", "predscheme_instances", "print_lexicon", "print_vit",
    "render_template", "validate",
]
