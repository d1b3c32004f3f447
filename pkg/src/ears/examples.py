"""The worked examples, runnable end to end (``ears paper-examples``)."""
from __future__ import annotations

from .earoot import Root, build_ears, table1_base, table4_base
from .lattice import lattice_semilattice


def _sig(nu, *idx):
    return Root((0,), tuple(int(i + 1 in idx) for i in range(nu)))


def a1_nu3_words():
    """(system, base, target root, printed word, corrected word) for the A1, nu = 3 example.

    The printed word starts with w_{s1+s3-e}; the identity holds once the first
    letter is w_{s1+s2-e}.
    """
    e = build_ears("A", 1, 3, 0, None, lattice_semilattice(3))
    eps = Root((1,), (0, 0, 0))
    s = lambda *i: _sig(3, *i)  # noqa: E731
    target = s(1, 2, 3) - eps
    tail = [s(1) - eps, s(1, 3) - eps, eps, s(3) - eps, eps, s(2) - eps, s(2, 3) - eps, eps]
    printed = [s(1, 3) - eps] + tail
    corrected = [s(1, 2) - eps] + tail
    return e, table1_base(e), target, printed, corrected


def example_word_identity() -> dict:
    from .reflect import classify
    from .weyl import HyperbolicSpace
    e, P, target, printed, corrected = a1_nu3_words()
    space = HyperbolicSpace(e)
    w = space.reflection(target)
    holds = space.word_eval(corrected) == w
    printed_holds = space.word_eval(printed) == w
    c = classify(e, P, witness_hints={target: [corrected]})
    ok = holds and c.reflectable_base and c.m_m.value == "No" and c.m_c.value == "No"
    return {"name": "A1 nu=3 word identity", "pass": ok,
            "summary": f"corrected 9-letter word equals w_{target.label()}: {holds}; "
                       f"printed word: {printed_holds}; M_r {c.m_r.value}, M_m {c.m_m.value}, "
                       f"M_c {c.m_c.value}",
            "corrected_word": [r.label() for r in corrected],
            "printed_word": [r.label() for r in printed],
            "printed_word_holds": printed_holds,
            "classification": c.to_json()}


def a2_five_element_base():
    e = build_ears("A", 2, 2, 0)
    Pi = [Root((1, 0), (0, 0)), Root((0, 1), (0, 0)), Root((1, 0), (2, 0)),
          Root((0, 1), (3, 0)), Root((0, 1), (0, 1))]
    return e, Pi


def example_two_cardinalities() -> dict:
    from .reflect import classify
    e, Pi = a2_five_element_base()
    c = classify(e, Pi)
    canon = table1_base(e)
    lattice_certs = all(r.status == "CertifiedNecessary" and r.reason.startswith("lattice")
                        for r in c.removals.values())
    ok = c.reflectable_base and len(canon) == 4 and c.m_m.value == "Yes" and lattice_certs
    return {"name": "A2 nu=2 five-element reflectable base", "pass": ok,
            "summary": f"reflectable base {c.reflectable_base}, canonical base size {len(canon)}, "
                       f"M_m {c.m_m.value}, M_c {c.m_c.value}, lattice certificates {lattice_certs}",
            "classification": c.to_json()}


def example_generated_root_space() -> dict:
    from .liepres import GradedPresentation, TruncatedQuotient, right_normed
    e = build_ears("A", 1, 2, 0, None, lattice_semilattice(2))
    P, _ = table4_base(e)
    pres = GradedPresentation(e, P)
    a = Root((1,), (0, 0))
    x = pres.letter_of(_sig(2, 1) - a)
    y = pres.letter_of(a)
    z = pres.letter_of(_sig(2, 2) - a)
    el = right_normed([right_normed([x, y]), z])
    tq = TruncatedQuotient(pres, 3)
    nonzero = not tq.is_zero(el)
    return {"name": "A1 nu=2 ind 1 generated root space", "pass": nonzero,
            "summary": f"[[X_(s1-a), X_a], X_(s2-a)] nonzero in the quotient: {nonzero}"}


def run_all() -> list:
    return [example_word_identity(), example_two_cardinalities(), example_generated_root_space()]
