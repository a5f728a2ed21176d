#pragma once

#include "phontrim/alignment.hpp"
#include "phontrim/corrpat.hpp"
#include "phontrim/error.hpp"
#include "phontrim/pipeline.hpp"
#include "phontrim/random.hpp"
#include "phontrim/regularity.hpp"
#include "phontrim/sound_class.hpp"
#include "phontrim/text.hpp"
#include "phontrim/trimming.hpp"
#include "phontrim/wordlist.hpp"
