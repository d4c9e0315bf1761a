"""Canonical JSON rendering shared by the CLI and the verify suites.

Output is byte-reproducible: keys sorted, two-space indent, trailing newline,
no timestamps and no floats anywhere in the payloads.
"""

from __future__ import annotations

import json

from ._version import __version__


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def command_envelope(command: str, inputs_echo: dict, payload, error=None) -> dict:
    if error is None:
        status = {"ok": True}
    else:
        status = {
            "ok": False,
            "errorCode": type(error).__name__,
            "errorMessage": str(error),
        }
    return {
        "command": command,
        "inputsEcho": inputs_echo,
        "payload": payload,
        "status": status,
        "toolVersion": __version__,
    }
