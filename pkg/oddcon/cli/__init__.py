"""Model files, verification suites and the oddcon command line."""
