"""Tests of ORM models."""
