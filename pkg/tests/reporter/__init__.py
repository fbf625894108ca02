"""Tests for the reporter module."""