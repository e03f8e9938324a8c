phase = Parameter('phase')

with pulse.build(FakeAlmaden()) as phase_test_sched:

        pulse.shiftphase(
        phase, pulse.drive_channel(0))

phase_test_sched.instructions
