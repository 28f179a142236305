from src.cli.commands.bounds_commands import HANDLERS as BOUNDS_HANDLERS
from src.cli.commands.concentration_commands import HANDLERS as CONCENTRATION_HANDLERS
from src.cli.commands.lasso_commands import HANDLERS as LASSO_HANDLERS
from src.cli.commands.simulate_commands import HANDLERS as SIMULATE_HANDLERS
from src.cli.commands.ula_commands import HANDLERS as ULA_HANDLERS

HANDLERS = {
    **SIMULATE_HANDLERS,
    **BOUNDS_HANDLERS,
    **CONCENTRATION_HANDLERS,
    **LASSO_HANDLERS,
    **ULA_HANDLERS,
}

__all__ = ["HANDLERS"]
