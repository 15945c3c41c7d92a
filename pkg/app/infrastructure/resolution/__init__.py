from app.infrastructure.resolution.engine import PrologEngine
from app.infrastructure.resolution.query import Query

__all__ = ["PrologEngine", "Query"]
