"""the plugins package for file-loaders"""
