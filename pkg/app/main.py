from app.interfaces.cli.main import cli


def main():
    """Entry point of the ``prologue`` console script."""
    cli()


if __name__ == "__main__":
    main()
