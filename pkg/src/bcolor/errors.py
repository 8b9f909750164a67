"""Control-flow exceptions shared by the solvers.

Parse-time errors live next to the parsers (see :mod:`bcolor.graph` and
:mod:`bcolor.coloring`); this module only holds the solver-level refusals and
the internal-invariant failure used to abort with a reproducer.
"""

from __future__ import annotations

import json


class CapExceeded(Exception):
    """An input exceeded a documented size cap or search budget."""


class InstanceTooLarge(CapExceeded):
    """Brute-force solver refused an instance above its vertex cap."""


class ModulatorCapExceeded(CapExceeded):
    """No co-cluster modulator exists within the configured size cap."""


class StateBudgetExceeded(CapExceeded):
    """The tree-width dynamic program exceeded its state budget."""


class InternalInvariantError(Exception):
    """A solver invariant that should be unreachable was violated.

    Carries a machine-readable reproducer so the failing run can be replayed.
    The CLI prints ``reproducer_json()`` to stderr and exits with status 3.
    """

    def __init__(self, check_id: str, **context):
        super().__init__(f"internal invariant violated: {check_id}")
        self.check_id = check_id
        self.context = context

    def reproducer_json(self) -> str:
        payload = {"check": self.check_id}
        payload.update(self.context)
        return json.dumps(payload, indent=2, sort_keys=True, default=repr)
