"""
Membership of s_n - f_n in K_l(n, d), with its certificate, and the
equivalent membership of the evaluated element in K(n, d)
"""
from typing import Any, Dict, List

from ..family.generators import build_K, build_Kl, eval_map, family_builder
from ..groebner import member_certificate
from ..poly import format_poly
from .base_check import BaseCheck, CheckContext, CheckKind, CheckReport, CheckStatus


class MembershipCheck(BaseCheck):
    """Long and short membership verdicts, which must agree"""

    kind = CheckKind.MEMBERSHIP

    def get_id(self) -> str:
        return 'membership'

    def get_description(self) -> str:
        return "s_n - f_n lies in K_l(n, d) and its image lies in K(n, d)"

    def get_parameters(self) -> Dict[str, Any]:
        return {
            'track_certificate': {'default': True, 'type': bool,
                                  'description': 'Build and re-expand the certificate'},
        }

    def evaluate(self, context: CheckContext) -> CheckReport:
        params, field = context.params, context.field
        notes: List[str] = []

        long_target = family_builder(params, field, long=True).long_target()
        short_target = family_builder(params, field).target()
        evaluated = eval_map(long_target, params)
        if evaluated != short_target:
            return self.report(context, CheckStatus.FAIL, {
                'generator': format_poly(evaluated), 'side': 'eval',
                'normal_form': format_poly(evaluated - short_target)},
                ["evaluated s_n - f_n differs from the displayed short element"])

        Kl = build_Kl(params, field)
        degree = None
        if self.get_parameter('track_certificate'):
            certificate = member_certificate(Kl, long_target)
            long_member = certificate is not None
            if long_member:
                if not certificate.verify():
                    return self.report(context, CheckStatus.FAIL, {'certificate': certificate.to_dict()},
                                       ["certificate does not re-expand to s_n - f_n"])
                degree = certificate.max_coeff_degree
                notes.append(f"certificate over {len(Kl)} generators, max cofactor degree {degree}")
        else:
            long_member = Kl.contains(long_target)

        K = build_K(params, field)
        short_member = K.contains(short_target)

        notes.append(f"long verdict {long_member}, short verdict {short_member}")
        if not long_member:
            return self.report(context, CheckStatus.FAIL, {
                'generator': format_poly(long_target), 'side': 'long',
                'normal_form': format_poly(Kl.reduce(long_target))}, notes)
        if long_member != short_member:
            return self.report(context, CheckStatus.FAIL, {
                'generator': format_poly(short_target), 'side': 'short',
                'normal_form': format_poly(K.reduce(short_target))},
                notes + ["long and short verdicts disagree"])
        return self.report(context, CheckStatus.PASS, notes=notes, max_coeff_degree=degree)
