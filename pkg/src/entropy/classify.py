"""
Existence of pseudorandom transductions by generator and adversary logic.

Rows are generator logics, columns adversary logics:

    generator FO or LFP:      exists iff sigma ⪰_S tau (any adversary)
    generator LFPparity,
      adversary FO or LFP:    exists iff sigma has a non-unary relation, or
                              both are all-unary and sigma has at least as
                              many relations as tau
      adversary LFPparity:    exists if sigma ⪰_L tau; otherwise equivalent to
                              one-way functions when sigma has a non-unary
                              relation; otherwise impossible
"""

from typing import Union

from core.models import Classification, Logic, Signature, Verdict

from .orders import geq_lex, geq_surj


def _as_logic(value: Union[Logic, str]) -> Logic:
    return value if isinstance(value, Logic) else Logic(value)


def classify(
    gen_logic: Union[Logic, str],
    adv_logic: Union[Logic, str],
    sigma: Signature,
    tau: Signature,
) -> Classification:
    """
    Verdict on whether a (gen_logic, adv_logic)-pseudorandom transduction
    from sigma-structures to tau-structures exists.

    Raises:
        ValueError: If a logic name is not one of FO, LFP, LFPparity.
    """
    gen = _as_logic(gen_logic)
    adv = _as_logic(adv_logic)

    if gen in (Logic.FO, Logic.LFP):
        holds, k = geq_surj(sigma, tau)
        if holds:
            return Classification(
                verdict=Verdict.EXISTS,
                reason="sigma ⪰_S tau: a quantifier-free transduction is exactly uniform",
            )
        return Classification(
            verdict=Verdict.NOT_EXISTS,
            reason=f"sigma ⪰_S tau fails at k={k}: a (c,k)-type sentence distinguishes",
        )

    if adv in (Logic.FO, Logic.LFP):
        if not sigma.is_all_unary():
            return Classification(
                verdict=Verdict.EXISTS,
                reason="sigma has a non-unary relation: canonize and run the Rado construction",
            )
        if tau.is_all_unary() and len(sigma) >= len(tau):
            return Classification(
                verdict=Verdict.EXISTS,
                reason="both all-unary and sigma has at least as many relations: match them up",
            )
        return Classification(
            verdict=Verdict.NOT_EXISTS,
            reason="sigma all-unary with fewer bits than tau: (c,1)-types are preserved",
        )

    if geq_lex(sigma, tau):
        return Classification(
            verdict=Verdict.EXISTS,
            reason="sigma ⪰_L tau: a canonizing transduction reproduces the bits",
        )
    if not sigma.is_all_unary():
        return Classification(
            verdict=Verdict.IFF_OWF,
            reason="sigma ≺_L tau with a non-unary relation: exists iff one-way functions exist",
        )
    return Classification(
        verdict=Verdict.NOT_EXISTS,
        reason="sigma ≺_L tau and sigma all-unary",
    )
