from formal_path_integral import logger


def logErrorResponse(error, endText, response, run_id):
    logger.error(error, extra=run_id)
    logResponse(endText, response, run_id)


def logResponse(endText, response, run_id):
    logger.info(f"{endText}\n", extra=run_id)
    if response is not None:
        logger.debug("Emitting the following document: ", extra=run_id)
        logger.debug(f"{response}\n", extra=run_id)
