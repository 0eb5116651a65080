from harness.management.training_command import TrainCommand


class Command(TrainCommand):
    help = 'Trains the DCS model and writes its checkpoint'
    command_name = 'train_dcs'
    model_kind = 'dcs'
