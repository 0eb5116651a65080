from harness.management.training_command import TrainCommand


class Command(TrainCommand):
    help = 'Trains the AE model and writes its checkpoint'
    command_name = 'train_ae'
    model_kind = 'ae'
