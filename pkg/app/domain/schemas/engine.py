import platform

from pydantic import BaseModel, ConfigDict, Field


class EngineInfo(BaseModel):
    """Constant description of an engine build and of the host it runs on."""

    model_config = ConfigDict(frozen=True)

    name: str = Field(description="Engine name")
    version: str = Field(description="Engine version")
    license: str = Field(description="Engine license")
    os_name: str = Field(default_factory=platform.system, description="Host operating system name")
    os_arch: str = Field(default_factory=platform.machine, description="Host processor architecture")
    iso_compliant: bool = Field(default=False, description="True when the engine implements ISO Prolog")

    @property
    def run_on_linux(self) -> bool:
        """True on Linux hosts."""
        return self.os_name.lower().startswith("linux")

    @property
    def run_on_osx(self) -> bool:
        """True on macOS hosts."""
        return self.os_name.lower() in ("darwin", "macos", "mac os x")

    @property
    def run_on_windows(self) -> bool:
        """True on Windows hosts."""
        return self.os_name.lower().startswith("windows")
