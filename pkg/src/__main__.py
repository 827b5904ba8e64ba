"""
Entry point for pso-jobshop when run as a module
"""

from cli.main import cli

if __name__ == '__main__':
    cli()
