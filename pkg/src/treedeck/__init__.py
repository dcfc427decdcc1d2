"""Decks and multidecks of rooted binary tree shapes.

Library layout:

* :mod:`treedeck.shapes` - the canonical shape value type, named
  constructor families, codes, and the text form;
* :mod:`treedeck.enumeration` - exhaustive generation and counting;
* :mod:`treedeck.decks` - deck/multideck computation (DP and the
  brute-force oracle), profiles, and projection;
* :mod:`treedeck.reconstruct` - determination experiments,
  reconstruction numbers, counterexample families;
* :mod:`treedeck.extremal` - extremal deck cardinalities and subtree
  counts, closed forms next to exhaustive verifiers;
* :mod:`treedeck.universal` - k-universal trees, minimum-size search,
  and the ordered-factorization comparison sequence;
* :mod:`treedeck.cli` - the ``treedeck`` command.
"""

from .decks import (
    Deck,
    DeckProfile,
    MultiDeck,
    deck,
    deck_profile,
    induced_subtree,
    multideck,
    multideck_bruteforce,
    project_multideck,
    render_deck,
    render_multideck,
    subtree_count,
)
from .enumeration import all_shapes, shape_level, wedderburn
from .errors import (
    InconsistentMultideckError,
    InfeasibleError,
    ParseError,
    UnsupportedSizeError,
    VerificationError,
)
from .extremal import (
    ExtremalReport,
    g,
    max_deck_bruteforce,
    min_subtrees_bruteforce,
    s_y_closed_form,
    singleton_deck_shapes,
    singleton_jdeck_check,
    verify_xy_recurrences,
)
from .reconstruct import (
    CounterexampleFamily,
    DeterminationReport,
    FamilyCheck,
    ReconstructionNumber,
    counterexample_family,
    decks_determine,
    reconstruction_number,
    verify_counterexample,
)
from .shapes import (
    TreeShape,
    caterpillar,
    complete,
    decode,
    encode,
    jellyfish,
    join,
    leaf,
    parse_text,
    root_split,
    to_text,
    x_tree,
    y_tree,
    z_tree,
)
from .universal import (
    KalmarSequence,
    SearchCertificate,
    all_min_universal,
    is_universal,
    kalmar_terms,
    known_universal_trees,
    min_universal_size,
)

__version__ = "0.1.0"
