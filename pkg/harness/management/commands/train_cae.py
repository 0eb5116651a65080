from harness.management.training_command import TrainCommand


class Command(TrainCommand):
    help = 'Trains the CAE model and writes its checkpoint'
    command_name = 'train_cae'
    model_kind = 'cae'
