#  This file is managed by 'repo_helper'. Don't edit it directly.

__all__ = ["extras_require"]

extras_require = {"testing": ["pytest"], "all": ["pytest"]}
