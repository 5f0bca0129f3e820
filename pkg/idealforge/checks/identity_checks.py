"""
Identity checks: one per registered display chain

Each step of a chain compares two ideals (equality, or containment where a
component is claimed redundant). Steps are all evaluated so the notes show
which manipulations hold; the first failing step supplies the witness.
"""
from typing import Any, Dict, List, Optional, Tuple

from ..errors import FamilyError
from ..family.displays import CHAINS, DisplayChain, DisplayStep, Relation, display_builder
from ..ideals import Ideal, Witness, ideal_contains_witness, ideal_equal_witness
from .base_check import BaseCheck, CheckContext, CheckKind, CheckReport, CheckStatus


def compare_step(step: DisplayStep) -> Tuple[Optional[Witness], Ideal, Ideal]:
    """Evaluate both sides of a step; None witness when the relation holds"""
    left, right = step.left(), step.right()
    if step.relation is Relation.CONTAINS:
        return ideal_contains_witness(left, right, 'right'), left, right
    return ideal_equal_witness(left, right), left, right


def reverify(witness: Witness, left: Ideal, right: Ideal) -> bool:
    """Recompute the witness normal form against a fresh basis of the other side"""
    other = right if witness.side == 'left' else left
    fresh = Ideal(other.ring, other.generators)
    return not fresh.reduce(witness.generator).is_zero()


class IdentityCheck(BaseCheck):
    """Checks every step of one display chain"""

    kind = CheckKind.IDENTITY

    def __init__(self, chain: DisplayChain, parameters: Optional[Dict[str, Any]] = None):
        self.chain = chain
        super().__init__(parameters)

    def get_id(self) -> str:
        return self.chain.check_id

    def get_description(self) -> str:
        return self.chain.description

    @property
    def depends_on(self) -> Tuple[str, ...]:
        return self.chain.depends_on

    def applies_to(self, n: int, d: int) -> bool:
        return self.chain.applies_to(n)

    def evaluate(self, context: CheckContext) -> CheckReport:
        x = display_builder(context.params, context.field, context.literal)
        notes: List[str] = []
        failure: Optional[Tuple[DisplayStep, Witness, bool]] = None
        checked = 0
        for step in self.chain.steps(x):
            try:
                witness, left, right = compare_step(step)
            except FamilyError as e:
                if not context.literal:
                    raise
                notes.append(f"{step.label}: literal reading unavailable ({e})")
                continue
            checked += 1
            if witness is None:
                notes.append(f"{step.label}: holds")
                continue
            notes.append(f"{step.label}: fails")
            if failure is None:
                failure = (step, witness, reverify(witness, left, right))

        if failure is not None:
            step, witness, confirmed = failure
            if not confirmed:
                notes.append("witness did not re-verify against a fresh basis")
            self.logger.warning(f"Identity {self.check_id} failed", context={
                'step': step.label, 'n': context.params.n, 'd': context.params.d, 'literal': context.literal})
            return self.report(context, CheckStatus.FAIL, {'step': step.label, **witness.to_dict()}, notes)
        if checked == 0:
            return self.report(context, CheckStatus.SKIPPED, notes=notes + ["no step could be built"])
        return self.report(context, CheckStatus.PASS, notes=notes)


def identity_checks() -> List[IdentityCheck]:
    return [IdentityCheck(chain) for chain in CHAINS.values()]
