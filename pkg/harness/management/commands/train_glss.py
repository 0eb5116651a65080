from harness.management.training_command import TrainCommand


class Command(TrainCommand):
    help = 'Trains the GLSS model and writes its checkpoint'
    command_name = 'train_glss'
    model_kind = 'glss'
