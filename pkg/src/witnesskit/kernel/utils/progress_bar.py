"""This module implements the following classes and functions:
    - ProgressBar
    - LoggingSink
"""

import logging


class LoggingSink:
    """This class implements a progress sink which reports the progress of a task through the logging module.

    A record is emitted every time the task crosses a new tenth of its total number of steps.
    """

    def __init__(self, level=logging.INFO):

        self._level = level

        self._last_decile = -1

    def reset(self, n_steps, label):

        self._last_decile = -1

        logging.log(self._level, '{}: starting ({} steps)'.format(label, n_steps))

    def update(self, step, n_steps, label):

        if n_steps <= 0:
            return

        decile = (10 * step) // n_steps
        if decile > self._last_decile:
            self._last_decile = decile
            logging.log(self._level, '{}: {}/{}'.format(label, step, n_steps))


class ProgressBar:
    """This class implements as a singleton a progress bar for the whole application.
    """

    _instance = None

    def __new__(class_, *args, **kwargs):
        if not isinstance(class_._instance, class_):
            class_._instance = object.__new__(class_, *args, **kwargs)
        return class_._instance

    def __init__(self):

        self._sink = None

        self._n_steps = 0

        self._label = ''

    def set_sink(self, sink):
        """Bind the progress bar to a sink.

        Args:
            sink: any object with reset(n_steps, label) and update(step, n_steps, label) methods, or None
        """

        self._sink = sink

    def reset(self, n_steps, label='progress'):
        """Initializes the progress bar.

        Args:
            n_steps (int): the total number of steps of the task to monitor
            label (str): the name of the task
        """

        self._n_steps = n_steps

        self._label = label

        if not self._sink:
            return

        self._sink.reset(n_steps, label)

    def update(self, step):
        """Updates the progress bar.

        Args:
            step (int): the step
        """

        if not self._sink:
            return

        self._sink.update(step, self._n_steps, self._label)


progress_bar = ProgressBar()
