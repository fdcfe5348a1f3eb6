from importlib import metadata


def get_version() -> str:
    try:
        return metadata.version("scalevar")
    except metadata.PackageNotFoundError:
        # running from a source tree without installation
        return "0.0.0"


__version__ = get_version()
