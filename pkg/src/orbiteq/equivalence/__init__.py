"""Verifiers and converters for the orbit-equivalence notions."""

from orbiteq.equivalence.coe import (
    CoeData,
    GroupoidIsoData,
    coe_from_groupoid_iso,
    coe_to_groupoid_iso,
    cocycle_agreement,
    csoe_to_coe,
    groupoid_cocycle_from_coe,
    groupoid_iso_from_coe,
    verify_coe,
)
from orbiteq.equivalence.csoe import (
    CsoeData,
    check_derived_identities,
    semigroupoid_iso,
    semigroupoid_iso_extract,
    semigroupoid_iso_forward,
    verify_csoe,
)
from orbiteq.equivalence.group import (
    GroupCocycleData,
    GroupCoeData,
    group_to_semigroup,
    semigroup_to_group,
    verify_group_cocycle,
    verify_group_coe,
)
from orbiteq.equivalence.shift_coe import ShiftCoeData, from_semigroup, to_semigroup, verify_shift_coe

__all__ = [
    "CoeData",
    "CsoeData",
    "GroupCocycleData",
    "GroupCoeData",
    "GroupoidIsoData",
    "ShiftCoeData",
    "check_derived_identities",
    "coe_from_groupoid_iso",
    "coe_to_groupoid_iso",
    "cocycle_agreement",
    "csoe_to_coe",
    "from_semigroup",
    "group_to_semigroup",
    "groupoid_cocycle_from_coe",
    "groupoid_iso_from_coe",
    "semigroup_to_group",
    "semigroupoid_iso",
    "semigroupoid_iso_extract",
    "semigroupoid_iso_forward",
    "to_semigroup",
    "verify_coe",
    "verify_csoe",
    "verify_group_cocycle",
    "verify_group_coe",
    "verify_shift_coe",
]
