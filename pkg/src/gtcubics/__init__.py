"""Exact computational toolkit for cubic surfaces and twisted cubics."""
