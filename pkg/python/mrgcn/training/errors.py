"""Training errors."""

class TrainingError(Exception):
    pass

class TrainingDivergedError(TrainingError):

    def __init__(self, message: str, epoch: int):
        super().__init__(f"epoch {epoch}: {message}")
        self.epoch = epoch

class DatasetError(TrainingError):
    pass
