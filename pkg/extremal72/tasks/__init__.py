""" Celery tasks, registered under names relative to this package. """
