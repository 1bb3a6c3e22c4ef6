# adsharvest test suite
