#pragma once

#include <wavetriad/errors.hpp>
#include <wavetriad/rational.hpp>
#include <wavetriad/dispersion.hpp>
#include <wavetriad/triad.hpp>
#include <wavetriad/search.hpp>
#include <wavetriad/classify.hpp>
#include <wavetriad/experiment.hpp>
#include <wavetriad/presets.hpp>
#include <wavetriad/io.hpp>
