from app.interfaces.scripting.session import ScriptSession

__all__ = ["ScriptSession"]
