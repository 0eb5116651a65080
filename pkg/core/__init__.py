# Shared utilities: domain errors, tensor container, schedules, seeding
