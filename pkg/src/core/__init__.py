"""Core package: app, server bootstrap, loaders, logging, config and errors."""
