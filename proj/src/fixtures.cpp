#include "asrefine/fixtures.hpp"

#include <sstream>
#include <stdexcept>

#include "asrefine/diag.hpp"
#include "asrefine/parser.hpp"

namespace asrefine {

std::string make_cas_text(int scale, int64_t int_hi) {
  if (scale < 1) throw std::logic_error("make_cas: scale must be >= 1");
  const int64_t t20 = 20LL * scale;
  const int64_t t30 = 30LL * scale;
  const int64_t t270 = 270LL * scale;
  const int64_t hi = int_hi >= 0 ? int_hi : t270;

  std::ostringstream o;
  o << "% Car alarm system: doors, a lock, and a two-channel (flash/sound)\n"
       "% alarm. aState is the control state; the from* variables sequence\n"
       "% the outputs a transition owes before the next input is accepted.\n"
       "%\n"
       "% aState: 0 Flash, 1 Alarm, 2 Armed, 3 ClosedAndLocked,\n"
       "%         4 ClosedAndUnlocked, 5 OpenAndLocked, 6 OpenAndUnlocked,\n"
       "%         7 SilentAndOpen.\n"
       "type(enum_State, X) :- X in 0..7.\n"
       "type(int, X) :- X in 0.."
    << hi
    << ".\n"
       "type(bool, X) :- X in 0..1.\n"
       "\n"
       "var([aState], enum_State).\n"
       "var([fromAlarm, fromArmed, fromClosedAndLocked_OR_fromSilentAndOpen], enum_State).\n"
       "var([flashOn, soundOn], bool).\n"
       "state_def([aState, fromAlarm, fromArmed,\n"
       "           fromClosedAndLocked_OR_fromSilentAndOpen, flashOn, soundOn]).\n"
       "\n"
       "init([6, 0, 0, 0, 0, 0]).\n"
       "\n"
       "as :-\n"
       "  actions (\n"
       "    'after'(Wait_time)::(true) =>\n"
       "      (  ((Wait_time #= "
    << t20
    << " #/\\ aState #= 3) =>\n"
       "            (aState := 2; fromClosedAndLocked_OR_fromSilentAndOpen := 1))\n"
       "      [] ((Wait_time #= "
    << t30
    << " #/\\ aState #= 1 #/\\ fromArmed #= 4) =>\n"
       "            (aState := 0; fromAlarm := 4; fromArmed := 0))\n"
       "      [] ((Wait_time #= "
    << t270
    << " #/\\ aState #= 0 #/\\ fromAlarm #= 2) =>\n"
       "            (aState := 7; fromAlarm := 1; fromArmed := 0)) ),\n"
       "    'Lock'::(true) =>\n"
       "      (  ((aState #= 6 #/\\ fromAlarm #= 0) => (aState := 5))\n"
       "      [] ((aState #= 4 #/\\ fromArmed #\\= 1) =>\n"
       "            (aState := 3; fromArmed := 0)) ),\n"
       "    'Unlock'::(true) =>\n"
       "      (  ((aState #= 5) => (aState := 6))\n"
       "      [] ((aState #= 3) => (aState := 4))\n"
       "      [] ((aState #= 2 #/\\ fromClosedAndLocked_OR_fromSilentAndOpen #= 0) =>\n"
       "            (aState := 4; fromArmed := 1))\n"
       "      [] ((aState #= 1 #/\\ fromArmed #= 4) =>\n"
       "            (aState := 6; fromAlarm := 3; fromArmed := 0))\n"
       "      [] ((aState #= 0 #/\\ fromAlarm #= 4) => (aState := 6; fromAlarm := 3))\n"
       "      [] ((aState #= 0 #/\\ fromAlarm #= 2) => (aState := 6; fromAlarm := 1))\n"
       "      [] ((aState #= 7 #/\\ fromAlarm #= 0) => (aState := 6)) ),\n"
       "    'Close'::(true) =>\n"
       "      (  ((aState #= 6) => (aState := 4))\n"
       "      [] ((aState #= 5) => (aState := 3))\n"
       "      [] ((aState #= 7 #/\\ fromAlarm #= 0) =>\n"
       "            (aState := 2; fromClosedAndLocked_OR_fromSilentAndOpen := 1)) ),\n"
       "    'Open'::(true) =>\n"
       "      (  ((aState #= 4 #/\\ fromArmed #\\= 1) => (aState := 6))\n"
       "      [] ((aState #= 3) => (aState := 5))\n"
       "      [] ((aState #= 2 #/\\ fromClosedAndLocked_OR_fromSilentAndOpen #= 0) =>\n"
       "            (aState := 1; fromArmed := 2)) ),\n"
       "    'AlarmArmed_SetOn'::(true) =>\n"
       "      ( (fromClosedAndLocked_OR_fromSilentAndOpen #= 1) =>\n"
       "          (fromClosedAndLocked_OR_fromSilentAndOpen := 0) ),\n"
       "    'AlarmArmed_SetOff'::(true) =>\n"
       "      (  ((fromArmed #= 1) => (fromArmed := 0))\n"
       "      [] ((fromArmed #= 2) => (fromArmed := 3)) ),\n"
       "    'OpticalAlarm_SetOn'::(true) =>\n"
       "      (  ((fromArmed #= 3) => (flashOn := 1; fromArmed := 5))\n"
       "      [] ((fromArmed #= 6) => (flashOn := 1; fromArmed := 4)) ),\n"
       "    'OpticalAlarm_SetOff'::(true) =>\n"
       "      (  ((fromAlarm #= 1) => (flashOn := 0; fromAlarm := 0))\n"
       "      [] ((fromAlarm #= 3) => (flashOn := 0; fromAlarm := 5)) ),\n"
       "    'AcousticAlarm_SetOn'::(true) =>\n"
       "      (  ((fromArmed #= 3) => (soundOn := 1; fromArmed := 6))\n"
       "      [] ((fromArmed #= 5) => (soundOn := 1; fromArmed := 4)) ),\n"
       "    'AcousticAlarm_SetOff'::(true) =>\n"
       "      (  ((fromAlarm #= 4) => (soundOn := 0; fromAlarm := 2))\n"
       "      [] ((fromAlarm #= 3) => (soundOn := 0; fromAlarm := 1))\n"
       "      [] ((fromAlarm #= 5) => (soundOn := 0; fromAlarm := 0)) )\n"
       "  ),\n"
       "  dood (\n"
       "       'Lock'\n"
       "    [] [X:int]:'after'(X)\n"
       "    [] 'Unlock'\n"
       "    [] 'Close'\n"
       "    [] 'Open'\n"
       "    [] 'AlarmArmed_SetOn'\n"
       "    [] 'AlarmArmed_SetOff'\n"
       "    [] 'OpticalAlarm_SetOn'\n"
       "    [] 'OpticalAlarm_SetOff'\n"
       "    [] 'AcousticAlarm_SetOn'\n"
       "    [] 'AcousticAlarm_SetOff'\n"
       "  ).\n";
  return o.str();
}

Model make_cas(int scale, int64_t int_hi) {
  ParseResult r = parse_model(make_cas_text(scale, int_hi), "<make_cas>");
  if (!r.ok()) {
    throw std::logic_error("make_cas: generated model does not parse:\n" +
                           format_diagnostics(r.diagnostics));
  }
  return std::move(*r.model);
}

}  // namespace asrefine
