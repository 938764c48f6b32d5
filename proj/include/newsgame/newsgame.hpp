#pragma once

#include "newsgame/commands.hpp"
#include "newsgame/communication.hpp"
#include "newsgame/config.hpp"
#include "newsgame/errors.hpp"
#include "newsgame/model.hpp"
#include "newsgame/oracle.hpp"
#include "newsgame/parallel.hpp"
#include "newsgame/policy.hpp"
#include "newsgame/simulator.hpp"
#include "newsgame/tables.hpp"
#include "newsgame/welfare.hpp"
