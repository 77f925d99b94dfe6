"""Epistemic planning over Kripke models (C++ core)."""

from _epiplan import (  # noqa: F401
    InputError,
    State,
    Task,
    apply_action,
    bisimilar,
    canonical_key_hex,
    contract_state,
    coordinated_attack_task_json,
    encode_machine_json,
    eval_formula,
    parse_print,
    plan,
    validate_plan,
)

__all__ = [
    "InputError",
    "State",
    "Task",
    "apply_action",
    "bisimilar",
    "canonical_key_hex",
    "contract_state",
    "coordinated_attack_task_json",
    "encode_machine_json",
    "eval_formula",
    "parse_print",
    "plan",
    "validate_plan",
]
