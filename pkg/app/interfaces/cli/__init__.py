from app.interfaces.cli.main import cli
from app.interfaces.cli.repl import PrologRepl

__all__ = ["PrologRepl", "cli"]
