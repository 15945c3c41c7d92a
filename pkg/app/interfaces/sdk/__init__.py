from app.interfaces.sdk.provider import PrologProvider

__all__ = ["PrologProvider"]
